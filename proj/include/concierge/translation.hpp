// Copyright 2026 The Concierge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONCIERGE_TRANSLATION_HPP_
#define CONCIERGE_TRANSLATION_HPP_

#include <map>
#include <string>
#include <string_view>

namespace concierge::translation {

// Word-level source-to-English mapping. Values may be multi-word phrases.
struct Lexicon {
  std::string source_language;
  std::map<std::string, std::string> entries;
};

// Primary subtag, lowercased: "nl-BE" -> "nl".
std::string primary_language(std::string_view tag);

bool is_english(std::string_view tag);

// English text comes back verbatim. Anything else is tokenized and mapped
// word by word; unknown words pass through. Throws std::invalid_argument when
// the lexicon's language does not match `language`.
std::string translate(std::string_view text, std::string_view language,
                      const Lexicon& lexicon);

}  // namespace concierge::translation

#endif  // CONCIERGE_TRANSLATION_HPP_
