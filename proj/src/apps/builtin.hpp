/*
 * Copyright (c) 2026 The Coplay Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef COPLAY_APPS_BUILTIN_HPP
#define COPLAY_APPS_BUILTIN_HPP

#include "coplay/sim_env.hpp"

namespace coplay::apps {

void register_builtin_apps(AppRegistry& registry);

std::unique_ptr<SimApp> make_voice_call_app();
std::unique_ptr<SimApp> make_live_room_app();
std::unique_ptr<SimApp> make_group_call_app();
std::unique_ptr<SimApp> make_face_to_face_app();
std::unique_ptr<SimApp> make_live_comment_app();
std::unique_ptr<SimApp> make_permission_app();
std::unique_ptr<SimApp> make_payment_app();

} // namespace coplay::apps

#endif // COPLAY_APPS_BUILTIN_HPP
