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

#include "concierge/translation.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "concierge/textproc.hpp"

namespace concierge::translation {

std::string primary_language(std::string_view tag) {
  const std::size_t cut = tag.find_first_of("-_");
  std::string primary(tag.substr(0, cut));
  std::transform(primary.begin(), primary.end(), primary.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return primary;
}

bool is_english(std::string_view tag) { return primary_language(tag) == "en"; }

std::string translate(std::string_view text, std::string_view language,
                      const Lexicon& lexicon) {
  if (is_english(language)) return std::string(text);
  if (primary_language(lexicon.source_language) != primary_language(language)) {
    throw std::invalid_argument("lexicon is for '" + lexicon.source_language +
                                "', utterance is '" + std::string(language) +
                                "'");
  }
  textproc::TokenSequence out;
  for (std::string& token : textproc::tokenize(text)) {
    const auto it = lexicon.entries.find(token);
    out.push_back(it == lexicon.entries.end() ? std::move(token) : it->second);
  }
  return textproc::join(out);
}

}  // namespace concierge::translation
