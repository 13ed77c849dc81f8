#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace semcloud {

using StopwordSet = std::unordered_set<std::string>;

/// Sentences of the input plus, for every stem, the ordinals of the sentences
/// it occurs in (sorted, deduplicated).
struct SentenceIndex {
    std::vector<std::vector<std::string>> sentences;
    std::map<std::string, std::vector<std::size_t>> term_sentences;

    const std::vector<std::size_t> &sentences_of(const std::string &stem) const;
};

struct Term {
    std::string surface;
    std::string stem;
    int frequency = 0;
    double font_size = 0.0;
    double box_width = 0.0;
    double box_height = 0.0;

    friend bool operator==(const Term &, const Term &) = default;
};

/// Width per character and line height, both as multiples of the font size.
inline constexpr double kGlyphWidthRatio = 0.55;
inline constexpr double kLineHeightRatio = 1.2;

inline constexpr std::size_t kDefaultTopK = 50;
inline constexpr double kDefaultMinFont = 12.0;
inline constexpr double kDefaultMaxFont = 48.0;

/// Splits on '.', '!' or '?' followed by whitespace or end of text. Tokens are
/// whitespace-separated, lowercased and stripped of leading/trailing
/// punctuation. Throws errc::empty_input when no token survives.
SentenceIndex segment_sentences(std::string_view text);

/// Ranks stems by total occurrence count and keeps the top `k`. Font sizes and
/// boxes are left at zero; see assign_fonts.
std::vector<Term> extract_terms(const SentenceIndex &index, std::size_t k,
    const StopwordSet &stopwords);

std::vector<Term> assign_fonts(std::vector<Term> terms, double min_font, double max_font);

/// Box estimate for a surface at a given font size (no renderer available).
double estimated_box_width(std::string_view surface, double font_size);
double estimated_box_height(double font_size);

/// The bundled English list (data/stopwords-en-v1.txt).
const StopwordSet &default_stopwords();

/// One lowercase word per line; blank lines and lines starting with '#' are skipped.
StopwordSet load_stopwords(const std::filesystem::path &path);
StopwordSet parse_stopwords(std::string_view contents);

}  // namespace semcloud
