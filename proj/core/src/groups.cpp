#include "cgeo/groups.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace cgeo {

GroupSpec GroupSpec::free_abelian(int rank) {
    GroupSpec s;
    s.family = Family::FreeAbelian;
    s.rank = rank;
    s.validate();
    return s;
}

GroupSpec GroupSpec::free(int rank) {
    GroupSpec s;
    s.family = Family::Free;
    s.rank = rank;
    s.validate();
    return s;
}

GroupSpec GroupSpec::direct_product(std::vector<GroupSpec> factors) {
    GroupSpec s;
    s.family = Family::DirectProduct;
    s.factors = std::move(factors);
    s.validate();
    return s;
}

GroupSpec GroupSpec::free_product_of_cyclics(std::vector<int> orders) {
    GroupSpec s;
    s.family = Family::FreeProductOfCyclics;
    s.orders = std::move(orders);
    s.validate();
    return s;
}

GroupSpec GroupSpec::surface(int genus) {
    GroupSpec s;
    s.family = Family::Surface;
    s.genus = genus;
    s.validate();
    return s;
}

int GroupSpec::generator_count() const {
    switch (family) {
        case Family::FreeAbelian:
        case Family::Free:
            return rank;
        case Family::Surface:
            return 2 * genus;
        case Family::FreeProductOfCyclics:
            return static_cast<int>(orders.size());
        case Family::DirectProduct: {
            int n = 0;
            for (const auto& f : factors) n += f.generator_count();
            return n;
        }
    }
    return 0;
}

void GroupSpec::validate() const {
    switch (family) {
        case Family::FreeAbelian:
        case Family::Free:
            if (rank < 1) throw ConfigError("group.rank", "must be >= 1");
            break;
        case Family::Surface:
            if (genus < 2) throw ConfigError("group.genus", "must be >= 2");
            break;
        case Family::FreeProductOfCyclics:
            if (orders.size() < 2)
                throw ConfigError("group.orders", "needs >= 2 factors");
            for (int m : orders)
                if (m != 0 && m < 2)
                    throw ConfigError("group.orders", "each order is 0 (infinite) or >= 2");
            break;
        case Family::DirectProduct:
            if (factors.empty()) throw ConfigError("group.factors", "needs >= 1 factor");
            for (const auto& f : factors) f.validate();
            break;
    }
}

namespace {

// Letter order +1 < -1 < +2 < -2 < ...
int letter_key(Letter l) { return l > 0 ? 2 * l - 2 : -2 * l - 1; }

bool word_lex_less(const Word& a, const Word& b) {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(),
        [](Letter x, Letter y) { return letter_key(x) < letter_key(y); });
}

void check_letters(const GroupSpec& spec, const Word& w) {
    const int n = spec.generator_count();
    for (Letter l : w)
        if (l == 0 || std::abs(l) > n) throw UnknownGeneratorError(l);
}

Word normalize_free_abelian(int rank, const Word& w) {
    std::vector<long long> exp(static_cast<std::size_t>(rank), 0);
    for (Letter l : w) exp[static_cast<std::size_t>(std::abs(l) - 1)] += (l > 0 ? 1 : -1);
    Word out;
    for (int i = 0; i < rank; ++i) {
        const long long e = exp[static_cast<std::size_t>(i)];
        for (long long j = 0; j < std::llabs(e); ++j) out.push_back(e > 0 ? i + 1 : -(i + 1));
    }
    return out;
}

Word normalize_fpc(const std::vector<int>& orders, const Word& w) {
    // Syllable stack; exponents kept in [0, m) for finite orders.
    std::vector<std::pair<int, long long>> syl;  // (0-based gen, exponent)
    for (Letter l : w) {
        const int g = std::abs(l) - 1;
        const int m = orders[static_cast<std::size_t>(g)];
        const long long d = l > 0 ? 1 : -1;
        if (!syl.empty() && syl.back().first == g) {
            long long e = syl.back().second + d;
            if (m > 0) e = ((e % m) + m) % m;
            if (e == 0)
                syl.pop_back();
            else
                syl.back().second = e;
        } else {
            long long e = d;
            if (m > 0) e = ((e % m) + m) % m;
            if (e == 0) continue;  // only possible for m == 1, excluded by validate
            syl.emplace_back(g, e);
        }
    }
    Word out;
    for (auto [g, e] : syl) {
        const int m = orders[static_cast<std::size_t>(g)];
        long long rep = e;
        if (m > 0) {
            // minimal-length representative; ties (m even, e == m/2) to positive
            if (e > m - e) rep = e - m;
        }
        for (long long j = 0; j < std::llabs(rep); ++j)
            out.push_back(rep > 0 ? g + 1 : -(g + 1));
    }
    return out;
}

// --- surface groups ---------------------------------------------------------

// Cyclic rotations of the genus-g relator [a1,b1]...[ag,bg] and its inverse.
std::vector<Word> relator_rotations(int genus) {
    Word rel;
    for (int i = 0; i < genus; ++i) {
        const int a = 2 * i + 1, b = 2 * i + 2;
        rel.push_back(a);
        rel.push_back(b);
        rel.push_back(-a);
        rel.push_back(-b);
    }
    Word inv(rel.rbegin(), rel.rend());
    for (Letter& l : inv) l = -l;
    std::vector<Word> rots;
    for (const Word* base : {&rel, &inv}) {
        for (std::size_t s = 0; s < base->size(); ++s) {
            Word r;
            for (std::size_t j = 0; j < base->size(); ++j)
                r.push_back((*base)[(s + j) % base->size()]);
            rots.push_back(std::move(r));
        }
    }
    std::sort(rots.begin(), rots.end());
    rots.erase(std::unique(rots.begin(), rots.end()), rots.end());
    return rots;
}

// Longest common prefix of w[i..] with rot.
std::size_t match_len(const Word& w, std::size_t i, const Word& rot) {
    std::size_t l = 0;
    while (i + l < w.size() && l < rot.size() && w[i + l] == rot[l]) ++l;
    return l;
}

// Replace w[i..i+l) (prefix of rot, rot == 1 in the group) by the inverse of
// the remaining suffix of rot, then freely reduce.
Word apply_relator(const Word& w, std::size_t i, std::size_t l, const Word& rot) {
    Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    for (std::size_t j = rot.size(); j > l; --j) out.push_back(-rot[j - 1]);
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(i + l), w.end());
    return detail::free_reduce(out);
}

}  // namespace

namespace detail {

Word free_reduce(const Word& w) {
    Word out;
    for (Letter l : w) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word dehn_reduce(int genus, const Word& w) {
    const auto rots = relator_rotations(genus);
    const std::size_t half = static_cast<std::size_t>(2 * genus);
    Word cur = free_reduce(w);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < cur.size() && !changed; ++i) {
            for (const Word& rot : rots) {
                const std::size_t l = match_len(cur, i, rot);
                if (l > half) {
                    cur = apply_relator(cur, i, l, rot);
                    changed = true;
                    break;
                }
            }
        }
    }
    return cur;
}

}  // namespace detail

namespace {

// Canonical form for surface groups: Dehn-reduce, then close under
// length-preserving half-relator swaps (re-running Dehn after each move, and
// restarting from any strictly shorter word found), and take the least word
// in the letter order.  Small-cancellation geometry keeps the closure tiny
// for the word lengths this library handles.
Word normalize_surface(int genus, const Word& w) {
    const auto rots = relator_rotations(genus);
    const std::size_t half = static_cast<std::size_t>(2 * genus);
    Word start = detail::dehn_reduce(genus, w);
    for (;;) {
        std::set<Word> seen{start};
        std::queue<Word> todo;
        todo.push(start);
        bool restarted = false;
        while (!todo.empty() && !restarted) {
            Word u = todo.front();
            todo.pop();
            for (std::size_t i = 0; i < u.size() && !restarted; ++i) {
                for (const Word& rot : rots) {
                    if (match_len(u, i, rot) < half) continue;
                    Word v = detail::dehn_reduce(genus, apply_relator(u, i, half, rot));
                    if (v.size() < start.size()) {
                        start = v;
                        restarted = true;
                        break;
                    }
                    if (v.size() == start.size() && seen.insert(v).second) todo.push(v);
                }
            }
            if (seen.size() > 100000)
                throw std::runtime_error("surface normal-form closure exploded");
        }
        if (restarted) continue;
        Word best = *seen.begin();
        for (const Word& u : seen)
            if (word_lex_less(u, best)) best = u;
        return best;
    }
}

std::vector<int> factor_offsets(const GroupSpec& spec) {
    std::vector<int> off{0};
    for (const auto& f : spec.factors) off.push_back(off.back() + f.generator_count());
    return off;
}

Word normalize_word(const GroupSpec& spec, const Word& w) {
    switch (spec.family) {
        case Family::FreeAbelian:
            return normalize_free_abelian(spec.rank, w);
        case Family::Free:
            return detail::free_reduce(w);
        case Family::FreeProductOfCyclics:
            return normalize_fpc(spec.orders, w);
        case Family::Surface:
            return normalize_surface(spec.genus, w);
        case Family::DirectProduct: {
            const auto off = factor_offsets(spec);
            Word out;
            std::vector<Word> parts(spec.factors.size());
            for (Letter l : w) {
                const int g = std::abs(l) - 1;
                const std::size_t fi = static_cast<std::size_t>(
                    std::upper_bound(off.begin(), off.end(), g) - off.begin() - 1);
                const int local = g - off[fi] + 1;
                parts[fi].push_back(l > 0 ? local : -local);
            }
            for (std::size_t fi = 0; fi < spec.factors.size(); ++fi) {
                Word p = normalize_word(spec.factors[fi], parts[fi]);
                for (Letter l : p)
                    out.push_back(l > 0 ? l + off[fi] : l - off[fi]);
            }
            return out;
        }
    }
    return {};
}

}  // namespace

bool element_less(const Element& a, const Element& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return word_lex_less(a.word, b.word);
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Letter l : e.word) {
        h ^= static_cast<std::size_t>(l + (1 << 20));
        h *= 1099511628211ull;
    }
    return h;
}

Element normalize(const GroupSpec& spec, const Word& word) {
    check_letters(spec, word);
    return Element{normalize_word(spec, word)};
}

Element multiply(const GroupSpec& spec, const Element& a, const Element& b) {
    Word w = a.word;
    w.insert(w.end(), b.word.begin(), b.word.end());
    return Element{normalize_word(spec, w)};
}

Element inverse(const GroupSpec& spec, const Element& a) {
    Word w(a.word.rbegin(), a.word.rend());
    for (Letter& l : w) l = -l;
    return Element{normalize_word(spec, w)};
}

bool elements_equal(const GroupSpec& spec, const Element& a, const Element& b) {
    if (spec.family != Family::Surface && spec.family != Family::DirectProduct)
        return a.word == b.word;
    if (a.word == b.word) return true;
    Element d = multiply(spec, a, inverse(spec, b));
    return d.is_identity();
}

GroupInfo group_info(const GroupSpec& spec) {
    spec.validate();
    GroupInfo info;
    info.generator_count = spec.generator_count();
    info.finite = false;  // every supported family is infinite
    info.geodesic_normal_form = true;
    if (spec.family == Family::Surface) info.geodesic_normal_form = false;
    if (spec.family == Family::DirectProduct)
        for (const auto& f : spec.factors)
            info.geodesic_normal_form &= group_info(f).geodesic_normal_form;
    return info;
}

std::vector<std::string> generator_names(const GroupSpec& spec) {
    std::vector<std::string> names;
    switch (spec.family) {
        case Family::FreeAbelian: {
            static const char* xyz[] = {"x", "y", "z"};
            for (int i = 0; i < spec.rank; ++i)
                names.push_back(spec.rank <= 3 ? xyz[i] : "x" + std::to_string(i + 1));
            break;
        }
        case Family::Free:
        case Family::Surface: {
            const int n = spec.generator_count();
            for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
            break;
        }
        case Family::FreeProductOfCyclics: {
            static const char* stu[] = {"s", "t", "u", "v", "w"};
            for (std::size_t i = 0; i < spec.orders.size(); ++i)
                names.push_back(i < 5 ? stu[i] : "s" + std::to_string(i + 1));
            break;
        }
        case Family::DirectProduct: {
            int fi = 1;
            for (const auto& f : spec.factors) {
                for (const auto& n : generator_names(f))
                    names.push_back(spec.factors.size() > 1 ? n + std::to_string(fi) : n);
                ++fi;
            }
            break;
        }
    }
    return names;
}

std::string word_to_string(const GroupSpec& spec, const Word& word) {
    if (word.empty()) return "e";
    const auto names = generator_names(spec);
    std::string out;
    for (Letter l : word) {
        if (!out.empty()) out += ' ';
        out += names[static_cast<std::size_t>(std::abs(l) - 1)];
        if (l < 0) out += '\'';
    }
    return out;
}

int letter_factor(const GroupSpec& spec, Letter l) {
    if (spec.family != Family::DirectProduct)
        throw std::logic_error("letter_factor: not a direct product");
    const auto off = factor_offsets(spec);
    const int g = std::abs(l) - 1;
    return static_cast<int>(std::upper_bound(off.begin(), off.end(), g) - off.begin() - 1);
}

std::vector<Word> split_by_factor(const GroupSpec& spec, const Word& canonical) {
    if (spec.family != Family::DirectProduct)
        throw std::logic_error("split_by_factor: not a direct product");
    const auto off = factor_offsets(spec);
    std::vector<Word> parts(spec.factors.size());
    for (Letter l : canonical) {
        const int g = std::abs(l) - 1;
        const std::size_t fi = static_cast<std::size_t>(
            std::upper_bound(off.begin(), off.end(), g) - off.begin() - 1);
        const int local = g - off[fi] + 1;
        parts[fi].push_back(l > 0 ? local : -local);
    }
    return parts;
}

std::vector<int> factor_lengths(const GroupSpec& spec, const Element& e) {
    if (spec.family != Family::DirectProduct) return {e.length()};
    std::vector<int> lens(spec.factors.size(), 0);
    const auto off = factor_offsets(spec);
    for (Letter l : e.word) {
        const int g = std::abs(l) - 1;
        const std::size_t fi = static_cast<std::size_t>(
            std::upper_bound(off.begin(), off.end(), g) - off.begin() - 1);
        ++lens[fi];
    }
    return lens;
}

}  // namespace cgeo
