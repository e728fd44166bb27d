#ifndef HRNMF_STEMMER_HPP
#define HRNMF_STEMMER_HPP

#include <string>
#include <string_view>

namespace hrnmf {

/// Porter (1980) suffix stripping for a lowercase ASCII word.
///
/// Implements the original published algorithm (steps 1a through 5b) without
/// the later revisions found in Snowball "english". Words of length <= 2 are
/// returned unchanged. Characters outside a-z are treated as consonants.
std::string porter_stem(std::string_view word);

}  // namespace hrnmf

#endif  // HRNMF_STEMMER_HPP
