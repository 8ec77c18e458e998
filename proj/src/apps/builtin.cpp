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

#include "apps/builtin.hpp"

namespace coplay::apps {

void register_builtin_apps(AppRegistry& registry)
{
    registry.add({"face-to-face", "Face-to-face group creation with a shared 4-digit code",
                  {{"face-to-face"}, {"face to face"}}, make_face_to_face_app});
    registry.add({"group-call", "Group chat with group voice and video calls",
                  {{"group", "call"}, {"group", "chat", "video"}}, make_group_call_app});
    registry.add({"voice-call", "One-to-one voice calls with ring timeout and call back",
                  {{"voice", "call"}, {"video", "call"}, {"call", "back"}}, make_voice_call_app});
    registry.add({"live-room", "LIVE feed with multi-guest invites and watch-together",
                  {{"multi-guest"}, {"guest", "live"}, {"watch", "together"}}, make_live_room_app});
    registry.add({"live-comment", "LIVE session with comments, replies and interactive cards",
                  {{"comment"}, {"interactive", "card"}}, make_live_comment_app});
    registry.add({"permission", "Meeting with screen-share permission requests",
                  {{"permission"}, {"screen", "shar"}}, make_permission_app});
    registry.add({"payment", "Chat wallet with peer transfers",
                  {{"payment"}, {"transfer"}, {"pay"}}, make_payment_app});
}

} // namespace coplay::apps
