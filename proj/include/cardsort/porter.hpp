#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace cardsort {

// Porter stemming algorithm (M.F. Porter, "An algorithm for suffix
// stripping", Program 14(3), 1980), following the author's reference
// implementation at https://tartarus.org/martin/PorterStemmer/ including its
// two documented departures from the 1980 text (step 2 "bli"->"ble" instead
// of "abli"->"able", and the added "logi"->"log" rule) and its rule of
// leaving words of length <= 2 untouched. The published test
// vocabulary/output pair corresponds to exactly this variant.
namespace porter_detail {

inline bool is_consonant(const std::string& w, std::size_t i) {
    switch (w[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return false;
        case 'y':
            return i == 0 ? true : !is_consonant(w, i - 1);
        default:
            return true;
    }
}

// Number of vowel-consonant sequences in w[0..len).
inline int measure(const std::string& w, std::size_t len) {
    std::size_t i = 0;
    int n = 0;
    while (i < len && is_consonant(w, i)) ++i;
    for (;;) {
        while (i < len && !is_consonant(w, i)) ++i;
        if (i >= len) break;
        while (i < len && is_consonant(w, i)) ++i;
        ++n;
    }
    return n;
}

inline bool contains_vowel(const std::string& w, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i)
        if (!is_consonant(w, i)) return true;
    return false;
}

inline bool ends_double_consonant(const std::string& w) {
    const std::size_t len = w.size();
    return len >= 2 && w[len - 1] == w[len - 2] && is_consonant(w, len - 1);
}

// consonant-vowel-consonant ending at w[len-1], last consonant not w/x/y.
inline bool cvc(const std::string& w, std::size_t len) {
    if (len < 3) return false;
    if (!is_consonant(w, len - 1) || is_consonant(w, len - 2) || !is_consonant(w, len - 3))
        return false;
    const char last = w[len - 1];
    return last != 'w' && last != 'x' && last != 'y';
}

inline bool ends_with(const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// First textual suffix match wins; the measure condition is then tested and
// no further rules are tried, matching the reference switch/break structure.
template <std::size_t N>
inline void apply_rule_list(std::string& w, const std::array<Rule, N>& rules, int min_measure) {
    for (const Rule& rule : rules) {
        if (!ends_with(w, rule.suffix)) continue;
        const std::size_t stem_len = w.size() - rule.suffix.size();
        if (measure(w, stem_len) > min_measure) {
            w.resize(stem_len);
            w.append(rule.replacement);
        }
        return;
    }
}

inline void step1a(std::string& w) {
    if (w.back() != 's') return;
    if (ends_with(w, "sses")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ies")) {
        w.resize(w.size() - 3);
        w.push_back('i');
    } else if (!ends_with(w, "ss")) {
        w.pop_back();
    }
}

inline void step1b(std::string& w) {
    if (ends_with(w, "eed")) {
        if (measure(w, w.size() - 3) > 0) w.pop_back();
        return;
    }
    bool stripped = false;
    if (ends_with(w, "ed") && contains_vowel(w, w.size() - 2)) {
        w.resize(w.size() - 2);
        stripped = true;
    } else if (ends_with(w, "ing") && contains_vowel(w, w.size() - 3)) {
        w.resize(w.size() - 3);
        stripped = true;
    }
    if (!stripped) return;
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w.push_back('e');
    } else if (ends_double_consonant(w)) {
        const char last = w.back();
        if (last != 'l' && last != 's' && last != 'z') w.pop_back();
    } else if (measure(w, w.size()) == 1 && cvc(w, w.size())) {
        w.push_back('e');
    }
}

inline void step1c(std::string& w) {
    if (w.back() == 'y' && contains_vowel(w, w.size() - 1)) w.back() = 'i';
}

inline void step2(std::string& w) {
    static constexpr std::array<Rule, 21> rules{{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"bli", "ble"},     {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
        {"logi", "log"},
    }};
    apply_rule_list(w, rules, 0);
}

inline void step3(std::string& w) {
    static constexpr std::array<Rule, 7> rules{{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    apply_rule_list(w, rules, 0);
}

inline void step4(std::string& w) {
    static constexpr std::array<std::string_view, 19> suffixes{
        "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment",
        "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
    };
    for (std::string_view suffix : suffixes) {
        if (!ends_with(w, suffix)) continue;
        const std::size_t stem_len = w.size() - suffix.size();
        if (suffix == "ion") {
            if (stem_len == 0) return;
            const char before = w[stem_len - 1];
            if (before != 's' && before != 't') return;
        }
        if (measure(w, stem_len) > 1) w.resize(stem_len);
        return;
    }
}

inline void step5a(std::string& w) {
    if (w.back() != 'e') return;
    const int m = measure(w, w.size() - 1);
    if (m > 1 || (m == 1 && !cvc(w, w.size() - 1))) w.pop_back();
}

inline void step5b(std::string& w) {
    if (w.back() == 'l' && ends_double_consonant(w) && measure(w, w.size()) > 1) w.pop_back();
}

}  // namespace porter_detail

inline std::string porter_stem(std::string word) {
    if (word.size() <= 2) return word;
    using namespace porter_detail;
    step1a(word);
    step1b(word);
    step1c(word);
    step2(word);
    step3(word);
    step4(word);
    step5a(word);
    step5b(word);
    return word;
}

}  // namespace cardsort
