// Copyright 2026 The phonodisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Default articulatory feature table; mirrors data/features.csv.

#ifndef PHONODISC_BUILTIN_FEATURES_HPP
#define PHONODISC_BUILTIN_FEATURES_HPP

#include <sstream>
#include <string_view>

#include "phonodisc/ipa.hpp"

namespace phonodisc {

inline constexpr std::string_view kBuiltinFeatureCsv = R"csv(symbol,kind,height,backness,roundness,manner,place,voicing
i,vowel,close,front,unrounded,,,
y,vowel,close,front,rounded,,,
ɨ,vowel,close,central,unrounded,,,
ʉ,vowel,close,central,rounded,,,
ɯ,vowel,close,back,unrounded,,,
u,vowel,close,back,rounded,,,
ɪ,vowel,near-close,near-front,unrounded,,,
ʏ,vowel,near-close,near-front,rounded,,,
ʊ,vowel,near-close,near-back,rounded,,,
e,vowel,close-mid,front,unrounded,,,
ø,vowel,close-mid,front,rounded,,,
ɘ,vowel,close-mid,central,unrounded,,,
ɵ,vowel,close-mid,central,rounded,,,
ɤ,vowel,close-mid,back,unrounded,,,
o,vowel,close-mid,back,rounded,,,
ə,vowel,mid,central,unrounded,,,
ɛ,vowel,open-mid,front,unrounded,,,
œ,vowel,open-mid,front,rounded,,,
ɜ,vowel,open-mid,central,unrounded,,,
ɞ,vowel,open-mid,central,rounded,,,
ʌ,vowel,open-mid,back,unrounded,,,
ɔ,vowel,open-mid,back,rounded,,,
æ,vowel,near-open,front,unrounded,,,
ɐ,vowel,near-open,central,unrounded,,,
a,vowel,open,front,unrounded,,,
ɶ,vowel,open,front,rounded,,,
ɑ,vowel,open,back,unrounded,,,
ɒ,vowel,open,back,rounded,,,
p,consonant,,,,plosive,bilabial,voiceless
b,consonant,,,,plosive,bilabial,voiced
t,consonant,,,,plosive,alveolar,voiceless
d,consonant,,,,plosive,alveolar,voiced
ʈ,consonant,,,,plosive,retroflex,voiceless
ɖ,consonant,,,,plosive,retroflex,voiced
c,consonant,,,,plosive,palatal,voiceless
ɟ,consonant,,,,plosive,palatal,voiced
k,consonant,,,,plosive,velar,voiceless
g,consonant,,,,plosive,velar,voiced
ɡ,consonant,,,,plosive,velar,voiced
q,consonant,,,,plosive,uvular,voiceless
ɢ,consonant,,,,plosive,uvular,voiced
ʔ,consonant,,,,plosive,glottal,voiceless
m,consonant,,,,nasal,bilabial,voiced
ɱ,consonant,,,,nasal,labio-dental,voiced
n,consonant,,,,nasal,alveolar,voiced
ɳ,consonant,,,,nasal,retroflex,voiced
ɲ,consonant,,,,nasal,palatal,voiced
ŋ,consonant,,,,nasal,velar,voiced
ɴ,consonant,,,,nasal,uvular,voiced
ʙ,consonant,,,,trill,bilabial,voiced
r,consonant,,,,trill,alveolar,voiced
ʀ,consonant,,,,trill,uvular,voiced
ⱱ,consonant,,,,flap,labio-dental,voiced
ɾ,consonant,,,,flap,alveolar,voiced
ɽ,consonant,,,,flap,retroflex,voiced
ɸ,consonant,,,,non-sibilant-fricative,bilabial,voiceless
β,consonant,,,,non-sibilant-fricative,bilabial,voiced
f,consonant,,,,non-sibilant-fricative,labio-dental,voiceless
v,consonant,,,,non-sibilant-fricative,labio-dental,voiced
θ,consonant,,,,non-sibilant-fricative,dental,voiceless
ð,consonant,,,,non-sibilant-fricative,dental,voiced
s,consonant,,,,sibilant-fricative,alveolar,voiceless
z,consonant,,,,sibilant-fricative,alveolar,voiced
ʃ,consonant,,,,sibilant-fricative,palato-alveolar,voiceless
ʒ,consonant,,,,sibilant-fricative,palato-alveolar,voiced
ʂ,consonant,,,,sibilant-fricative,retroflex,voiceless
ʐ,consonant,,,,sibilant-fricative,retroflex,voiced
ɕ,consonant,,,,sibilant-fricative,alveolo-palatal,voiceless
ʑ,consonant,,,,sibilant-fricative,alveolo-palatal,voiced
ç,consonant,,,,non-sibilant-fricative,palatal,voiceless
ʝ,consonant,,,,non-sibilant-fricative,palatal,voiced
x,consonant,,,,non-sibilant-fricative,velar,voiceless
ɣ,consonant,,,,non-sibilant-fricative,velar,voiced
χ,consonant,,,,non-sibilant-fricative,uvular,voiceless
ʁ,consonant,,,,non-sibilant-fricative,uvular,voiced
ħ,consonant,,,,non-sibilant-fricative,pharyngeal,voiceless
ʕ,consonant,,,,non-sibilant-fricative,pharyngeal,voiced
h,consonant,,,,non-sibilant-fricative,glottal,voiceless
ɦ,consonant,,,,non-sibilant-fricative,glottal,voiced
ɬ,consonant,,,,lateral-fricative,alveolar,voiceless
ɮ,consonant,,,,lateral-fricative,alveolar,voiced
ʋ,consonant,,,,approximant,labio-dental,voiced
ɹ,consonant,,,,approximant,alveolar,voiced
ɻ,consonant,,,,approximant,retroflex,voiced
j,consonant,,,,approximant,palatal,voiced
ɰ,consonant,,,,approximant,velar,voiced
w,consonant,,,,approximant,labio-velar,voiced
ʍ,consonant,,,,approximant,labio-velar,voiceless
ɥ,consonant,,,,approximant,labio-palatal,voiced
l,consonant,,,,lateral-approximant,alveolar,voiced
ɭ,consonant,,,,lateral-approximant,retroflex,voiced
ʎ,consonant,,,,lateral-approximant,palatal,voiced
ʟ,consonant,,,,lateral-approximant,velar,voiced
ɓ,consonant,,,,implosive,bilabial,voiced
ɗ,consonant,,,,implosive,alveolar,voiced
ʄ,consonant,,,,implosive,palatal,voiced
ɠ,consonant,,,,implosive,velar,voiced
ʛ,consonant,,,,implosive,uvular,voiced
ʘ,consonant,,,,click,bilabial,voiceless
ǀ,consonant,,,,click,dental,voiceless
ǃ,consonant,,,,click,alveolar,voiceless
ǂ,consonant,,,,click,palato-alveolar,voiceless
ǁ,consonant,,,,lateral-click,alveolar,voiceless
)csv";

inline const FeatureTable& builtin_feature_table() {
  static const FeatureTable table = [] {
    std::istringstream in{std::string(kBuiltinFeatureCsv)};
    return FeatureTable::from_csv(in);
  }();
  return table;
}

}  // namespace phonodisc

#endif  // PHONODISC_BUILTIN_FEATURES_HPP
