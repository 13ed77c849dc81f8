#include "semcloud/stemmer.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace semcloud {
namespace {

bool is_vowel(char c)
{
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool is_double(std::string_view w)
{
    if (w.size() < 2)
        return false;
    const char c = w.back();
    if (c != w[w.size() - 2])
        return false;
    return c == 'b' || c == 'd' || c == 'f' || c == 'g' || c == 'm' || c == 'n' || c == 'p' ||
        c == 'r' || c == 't';
}

bool is_li_ending(char c)
{
    return std::string_view("cdeghkmnrt").find(c) != std::string_view::npos;
}

bool ends_with(std::string_view w, std::string_view suffix)
{
    return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

bool contains_vowel(std::string_view w)
{
    return std::any_of(w.begin(), w.end(), is_vowel);
}

// Position after the first non-vowel that follows a vowel, starting at `from`.
std::size_t region_after(std::string_view w, std::size_t from)
{
    for (std::size_t i = from + 1; i < w.size(); ++i) {
        if (!is_vowel(w[i]) && is_vowel(w[i - 1]))
            return i + 1;
    }
    return w.size();
}

// Short syllable ending at the end of `w`.
bool ends_in_short_syllable(std::string_view w)
{
    const std::size_t n = w.size();
    if (n == 2)
        return is_vowel(w[0]) && !is_vowel(w[1]);
    if (n >= 3) {
        const char c = w[n - 1];
        return !is_vowel(w[n - 3]) && is_vowel(w[n - 2]) && !is_vowel(c) && c != 'w' && c != 'x' &&
            c != 'Y';
    }
    return false;
}

struct Stemming {
    std::string w;
    std::size_t r1 = 0;
    std::size_t r2 = 0;

    bool in_r1(std::size_t suffix_len) const { return w.size() - suffix_len >= r1; }
    bool in_r2(std::size_t suffix_len) const { return w.size() - suffix_len >= r2; }
    bool is_short() const { return r1 >= w.size() && ends_in_short_syllable(w); }
    void replace(std::size_t suffix_len, std::string_view with)
    {
        w.erase(w.size() - suffix_len);
        w += with;
    }
};

constexpr std::array<std::pair<std::string_view, std::string_view>, 18> kIrregular{{
    {"skis", "ski"},
    {"skies", "sky"},
    {"dying", "die"},
    {"lying", "lie"},
    {"tying", "tie"},
    {"idly", "idl"},
    {"gently", "gentl"},
    {"ugly", "ugli"},
    {"early", "earli"},
    {"only", "onli"},
    {"singly", "singl"},
    {"sky", "sky"},
    {"news", "news"},
    {"howe", "howe"},
    {"atlas", "atlas"},
    {"cosmos", "cosmos"},
    {"bias", "bias"},
    {"andes", "andes"},
}};

constexpr std::array<std::string_view, 8> kInvariantAfterStep1a{
    "inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed"};

// Nouns whose verb drops the "a" of the stem ("explain" / "explanation").
constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kAlternations{{
    {"explanation", "explain"},
    {"exclamation", "exclaim"},
    {"proclamation", "proclaim"},
    {"declamation", "declaim"},
    {"reclamation", "reclaim"},
    {"acclamation", "acclaim"},
}};

void step0(Stemming &s)
{
    for (std::string_view suf : {"'s'", "'s", "'"}) {
        if (ends_with(s.w, suf)) {
            s.replace(suf.size(), "");
            return;
        }
    }
}

void step1a(Stemming &s)
{
    if (ends_with(s.w, "sses")) {
        s.replace(4, "ss");
    } else if (ends_with(s.w, "ied") || ends_with(s.w, "ies")) {
        s.replace(3, s.w.size() > 4 ? "i" : "ie");
    } else if (ends_with(s.w, "us") || ends_with(s.w, "ss")) {
        // unchanged
    } else if (ends_with(s.w, "s")) {
        const std::string_view head = std::string_view(s.w).substr(0, s.w.size() - 1);
        if (head.size() >= 2 && contains_vowel(head.substr(0, head.size() - 1)))
            s.replace(1, "");
    }
}

void step1b(Stemming &s)
{
    for (std::string_view suf : {"eedly", "eed"}) {
        if (ends_with(s.w, suf)) {
            if (s.in_r1(suf.size()))
                s.replace(suf.size(), "ee");
            return;
        }
    }
    for (std::string_view suf : {"ingly", "edly", "ing", "ed"}) {
        if (!ends_with(s.w, suf))
            continue;
        const std::string_view head = std::string_view(s.w).substr(0, s.w.size() - suf.size());
        if (!contains_vowel(head))
            return;
        s.replace(suf.size(), "");
        if (ends_with(s.w, "at") || ends_with(s.w, "bl") || ends_with(s.w, "iz"))
            s.w += 'e';
        else if (is_double(s.w))
            s.w.pop_back();
        else if (s.is_short())
            s.w += 'e';
        return;
    }
}

void step1c(Stemming &s)
{
    const std::size_t n = s.w.size();
    if (n > 2 && (s.w[n - 1] == 'y' || s.w[n - 1] == 'Y') && !is_vowel(s.w[n - 2]))
        s.w[n - 1] = 'i';
}

void step2(Stemming &s)
{
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 24> rules{{
        {"ization", "ize"},
        {"ational", "ate"},
        {"fulness", "ful"},
        {"ousness", "ous"},
        {"iveness", "ive"},
        {"tional", "tion"},
        {"biliti", "ble"},
        {"lessli", "less"},
        {"entli", "ent"},
        {"ation", "ate"},
        {"alism", "al"},
        {"aliti", "al"},
        {"ousli", "ous"},
        {"iviti", "ive"},
        {"fulli", "ful"},
        {"enci", "ence"},
        {"anci", "ance"},
        {"abli", "able"},
        {"izer", "ize"},
        {"ator", "ate"},
        {"alli", "al"},
        {"bli", "ble"},
        {"ogi", "og"},
        {"li", ""},
    }};
    for (const auto &[suf, with] : rules) {
        if (!ends_with(s.w, suf))
            continue;
        if (!s.in_r1(suf.size()))
            return;
        const std::size_t head = s.w.size() - suf.size();
        if (suf == "ogi") {
            if (head > 0 && s.w[head - 1] == 'l')
                s.replace(suf.size(), with);
        } else if (suf == "li") {
            if (head > 0 && is_li_ending(s.w[head - 1]))
                s.replace(suf.size(), with);
        } else {
            s.replace(suf.size(), with);
        }
        return;
    }
}

void step3(Stemming &s)
{
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 9> rules{{
        {"ational", "ate"},
        {"tional", "tion"},
        {"alize", "al"},
        {"icate", "ic"},
        {"iciti", "ic"},
        {"ative", ""},
        {"ical", "ic"},
        {"ness", ""},
        {"ful", ""},
    }};
    for (const auto &[suf, with] : rules) {
        if (!ends_with(s.w, suf))
            continue;
        if (!s.in_r1(suf.size()))
            return;
        if (suf == "ative" && !s.in_r2(suf.size()))
            return;
        s.replace(suf.size(), with);
        return;
    }
}

void step4(Stemming &s)
{
    static constexpr std::array<std::string_view, 18> suffixes{
        "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism",
        "ate",   "iti",  "ous",  "ive",  "ize",  "ion",  "al",  "er",  "ic"};
    for (std::string_view suf : suffixes) {
        if (!ends_with(s.w, suf))
            continue;
        if (!s.in_r2(suf.size()))
            return;
        if (suf == "ion") {
            const std::size_t head = s.w.size() - 3;
            if (head > 0 && (s.w[head - 1] == 's' || s.w[head - 1] == 't'))
                s.replace(3, "");
        } else {
            s.replace(suf.size(), "");
        }
        return;
    }
}

void step5(Stemming &s)
{
    if (ends_with(s.w, "e")) {
        if (s.in_r2(1) ||
            (s.in_r1(1) &&
                !ends_in_short_syllable(std::string_view(s.w).substr(0, s.w.size() - 1))))
            s.w.pop_back();
    } else if (ends_with(s.w, "ll") && s.in_r2(1)) {
        s.w.pop_back();
    }
}

}  // namespace

std::string stem(std::string_view input)
{
    std::string word(input);
    if (word.size() <= 2)
        return word;

    for (const auto &[noun, verb] : kAlternations) {
        if (word == noun || (word.size() == noun.size() + 1 && ends_with(word, "s") &&
                                std::string_view(word).substr(0, noun.size()) == noun)) {
            word = verb;
            break;
        }
    }

    for (const auto &[from, to] : kIrregular) {
        if (word == from)
            return std::string(to);
    }

    Stemming s;
    s.w = std::move(word);
    if (s.w.front() == '\'')
        s.w.erase(0, 1);
    if (s.w.empty())
        return s.w;
    if (s.w[0] == 'y')
        s.w[0] = 'Y';
    for (std::size_t i = 1; i < s.w.size(); ++i) {
        if (s.w[i] == 'y' && is_vowel(s.w[i - 1]))
            s.w[i] = 'Y';
    }

    if (s.w.starts_with("gener") || s.w.starts_with("arsen"))
        s.r1 = 5;
    else if (s.w.starts_with("commun"))
        s.r1 = 6;
    else
        s.r1 = region_after(s.w, 0);
    s.r2 = s.r1 < s.w.size() ? region_after(s.w, s.r1) : s.w.size();
    if (s.r2 < s.r1)
        s.r2 = s.r1;

    step0(s);
    step1a(s);
    if (std::find(kInvariantAfterStep1a.begin(), kInvariantAfterStep1a.end(), s.w) !=
        kInvariantAfterStep1a.end()) {
        std::replace(s.w.begin(), s.w.end(), 'Y', 'y');
        return s.w;
    }
    step1b(s);
    step1c(s);
    step2(s);
    step3(s);
    step4(s);
    step5(s);

    std::replace(s.w.begin(), s.w.end(), 'Y', 'y');
    return s.w;
}

}  // namespace semcloud
