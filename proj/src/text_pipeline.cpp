#include "semcloud/text_pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "semcloud/error.hpp"
#include "semcloud/stemmer.hpp"

namespace semcloud {

namespace detail {
extern const std::string_view kDefaultStopwords;
}

namespace {

bool is_space(char c)
{
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_edge_punct(char c)
{
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

bool is_terminator(char c)
{
    return c == '.' || c == '!' || c == '?';
}

// Folds typographic quotes onto their ASCII counterparts so that edge
// stripping and stopword matching see "don't" rather than "don’t".
std::string normalize_quotes(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
            static_cast<unsigned char>(text[i + 1]) == 0x80) {
            const auto c = static_cast<unsigned char>(text[i + 2]);
            if (c == 0x98 || c == 0x99) {
                out += '\'';
                i += 2;
                continue;
            }
            if (c == 0x9C || c == 0x9D) {
                out += '"';
                i += 2;
                continue;
            }
        }
        out += text[i];
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view sentence)
{
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < sentence.size()) {
        while (i < sentence.size() && is_space(sentence[i]))
            ++i;
        std::size_t j = i;
        while (j < sentence.size() && !is_space(sentence[j]))
            ++j;
        std::size_t b = i;
        std::size_t e = j;
        while (b < e && is_edge_punct(sentence[b]))
            ++b;
        while (e > b && is_edge_punct(sentence[e - 1]))
            --e;
        if (b < e) {
            std::string token(sentence.substr(b, e - b));
            for (char &c : token)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            tokens.push_back(std::move(token));
        }
        i = j;
    }
    return tokens;
}

std::size_t code_points(std::string_view s)
{
    return static_cast<std::size_t>(std::count_if(
        s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

bool is_number(std::string_view token)
{
    bool digit = false;
    for (char c : token) {
        if (std::isdigit(static_cast<unsigned char>(c)))
            digit = true;
        else if (c != '.' && c != ',')
            return false;
    }
    return digit;
}

struct SurfaceCount {
    int count = 0;
    std::size_t first = 0;
};

struct StemCount {
    int count = 0;
    std::size_t first = 0;
    std::unordered_map<std::string, SurfaceCount> surfaces;
};

}  // namespace

const std::vector<std::size_t> &SentenceIndex::sentences_of(const std::string &stem) const
{
    static const std::vector<std::size_t> empty;
    const auto it = term_sentences.find(stem);
    return it == term_sentences.end() ? empty : it->second;
}

SentenceIndex segment_sentences(std::string_view raw)
{
    const std::string text = normalize_quotes(raw);
    SentenceIndex index;

    auto flush = [&](std::string_view chunk) {
        auto tokens = tokenize(chunk);
        if (tokens.empty())
            return;
        const std::size_t ordinal = index.sentences.size();
        for (const auto &token : tokens) {
            auto &ordinals = index.term_sentences[stem(token)];
            if (ordinals.empty() || ordinals.back() != ordinal)
                ordinals.push_back(ordinal);
        }
        index.sentences.push_back(std::move(tokens));
    };

    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (is_terminator(text[i]) && (i + 1 == text.size() || is_space(text[i + 1]))) {
            flush(std::string_view(text).substr(start, i + 1 - start));
            start = i + 1;
        }
    }
    if (start < text.size())
        flush(std::string_view(text).substr(start));

    if (index.sentences.empty())
        throw Error(errc::empty_input, "input text contains no words");
    return index;
}

std::vector<Term> extract_terms(const SentenceIndex &index, std::size_t k,
    const StopwordSet &stopwords)
{
    if (k == 0)
        throw Error(errc::invalid_argument, "k must be at least 1");

    std::unordered_map<std::string, StemCount> stems;
    std::unordered_map<std::string, std::string> stem_cache;
    std::size_t position = 0;
    bool any_content = false;

    for (const auto &sentence : index.sentences) {
        for (const auto &token : sentence) {
            const std::size_t pos = position++;
            if (stopwords.contains(token))
                continue;
            any_content = true;
            if (code_points(token) < 2 || is_number(token))
                continue;
            auto cached = stem_cache.find(token);
            if (cached == stem_cache.end())
                cached = stem_cache.emplace(token, stem(token)).first;

            auto [it, fresh] = stems.try_emplace(cached->second);
            StemCount &entry = it->second;
            if (fresh)
                entry.first = pos;
            ++entry.count;
            auto [sit, sfresh] = entry.surfaces.try_emplace(token);
            if (sfresh)
                sit->second.first = pos;
            ++sit->second.count;
        }
    }
    if (!any_content || stems.empty())
        throw Error(errc::empty_input, "input text contains no content words");

    std::vector<std::pair<const std::string *, const StemCount *>> ranked;
    ranked.reserve(stems.size());
    for (const auto &[key, entry] : stems)
        ranked.emplace_back(&key, &entry);
    std::sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
        if (a.second->count != b.second->count)
            return a.second->count > b.second->count;
        return a.second->first < b.second->first;
    });
    if (ranked.size() > k)
        ranked.resize(k);

    std::vector<Term> terms;
    terms.reserve(ranked.size());
    for (const auto &[key, entry] : ranked) {
        const std::string *best = nullptr;
        const SurfaceCount *best_count = nullptr;
        for (const auto &[surface, sc] : entry->surfaces) {
            if (!best || sc.count > best_count->count ||
                (sc.count == best_count->count && sc.first < best_count->first)) {
                best = &surface;
                best_count = &sc;
            }
        }
        Term term;
        term.surface = *best;
        term.stem = *key;
        term.frequency = entry->count;
        terms.push_back(std::move(term));
    }
    return terms;
}

double estimated_box_width(std::string_view surface, double font_size)
{
    return kGlyphWidthRatio * font_size * static_cast<double>(code_points(surface));
}

double estimated_box_height(double font_size)
{
    return kLineHeightRatio * font_size;
}

std::vector<Term> assign_fonts(std::vector<Term> terms, double min_font, double max_font)
{
    if (!(min_font < max_font) || min_font <= 0)
        throw Error(errc::invalid_argument, "font range must satisfy 0 < min_font < max_font");
    if (terms.empty())
        throw Error(errc::invalid_argument, "no terms to size");

    const auto [lo, hi] = std::minmax_element(terms.begin(), terms.end(),
        [](const Term &a, const Term &b) { return a.frequency < b.frequency; });
    const double f_min = lo->frequency;
    const double f_max = hi->frequency;

    for (auto &term : terms) {
        if (f_max > f_min)
            term.font_size =
                min_font + (term.frequency - f_min) / (f_max - f_min) * (max_font - min_font);
        else
            term.font_size = (min_font + max_font) / 2;
        term.box_width = estimated_box_width(term.surface, term.font_size);
        term.box_height = estimated_box_height(term.font_size);
    }
    return terms;
}

StopwordSet parse_stopwords(std::string_view contents)
{
    StopwordSet words;
    std::istringstream in{std::string(contents)};
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && is_space(line.back()))
            line.pop_back();
        std::size_t b = 0;
        while (b < line.size() && is_space(line[b]))
            ++b;
        line.erase(0, b);
        if (line.empty() || line.front() == '#')
            continue;
        for (char &c : line)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        words.insert(line);
    }
    return words;
}

StopwordSet load_stopwords(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(errc::invalid_argument, "cannot read stopword file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_stopwords(buf.str());
}

const StopwordSet &default_stopwords()
{
    static const StopwordSet words = parse_stopwords(detail::kDefaultStopwords);
    return words;
}

}  // namespace semcloud
