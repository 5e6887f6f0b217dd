#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cgeo/errors.hpp"

namespace cgeo {

/// A signed 1-based generator index: +i is generator i, -i its inverse.
using Letter = int;
using Word = std::vector<Letter>;

enum class Family {
    FreeAbelian,
    Free,
    DirectProduct,
    FreeProductOfCyclics,
    Surface,
};

/**
 * A finitely generated group from one of the supported families, with its
 * standard presentation.  Downstream code treats the group purely as a
 * normal-form oracle: normalize / multiply / inverse / equality.
 */
struct GroupSpec {
    Family family = Family::FreeAbelian;
    int rank = 0;                     // FreeAbelian, Free
    int genus = 0;                    // Surface (>= 2)
    std::vector<int> orders;          // FreeProductOfCyclics; 0 = infinite
    std::vector<GroupSpec> factors;   // DirectProduct

    static GroupSpec free_abelian(int rank);
    static GroupSpec free(int rank);
    static GroupSpec direct_product(std::vector<GroupSpec> factors);
    static GroupSpec free_product_of_cyclics(std::vector<int> orders);
    static GroupSpec surface(int genus);

    int generator_count() const;
    /// Throws ConfigError on invalid parameters (rank < 1, genus < 2, ...).
    void validate() const;

    bool operator==(const GroupSpec&) const = default;
};

/// A group element in canonical normal form.  Obtain via normalize/multiply.
struct Element {
    Word word;

    int length() const { return static_cast<int>(word.size()); }
    bool is_identity() const { return word.empty(); }
    bool operator==(const Element&) const = default;
};

/// Ordering used for canonical tie-breaking: shorter first, then letter order
/// +1 < -1 < +2 < -2 < ...
bool element_less(const Element& a, const Element& b);

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept;
};

Element normalize(const GroupSpec& spec, const Word& word);
Element multiply(const GroupSpec& spec, const Element& a, const Element& b);
Element inverse(const GroupSpec& spec, const Element& a);

/// Element equality as group elements.  For Surface this runs Dehn's
/// algorithm on a*b^-1 instead of comparing normal forms.
bool elements_equal(const GroupSpec& spec, const Element& a, const Element& b);

struct GroupInfo {
    int generator_count = 0;
    bool finite = false;
    bool geodesic_normal_form = false;
};
GroupInfo group_info(const GroupSpec& spec);

/// Standard generator names ("x,y" / "a,b" / "s,t" / per-factor suffixes).
std::vector<std::string> generator_names(const GroupSpec& spec);
std::string word_to_string(const GroupSpec& spec, const Word& word);

/// DirectProduct helpers: which factor a letter belongs to, and the canonical
/// word split per factor (local letters).  Throws for other families.
int letter_factor(const GroupSpec& spec, Letter l);
std::vector<Word> split_by_factor(const GroupSpec& spec, const Word& canonical);
/// Word length contributed by each factor (size-1 vector for non-products).
std::vector<int> factor_lengths(const GroupSpec& spec, const Element& e);

namespace detail {
/// Dehn's algorithm for surface groups: freely reduce, then repeatedly
/// replace any subword longer than half a cyclic conjugate of the relator
/// (or its inverse) by the shorter complement.  Returns a Dehn-reduced word;
/// the input is trivial iff the result is empty.
Word dehn_reduce(int genus, const Word& w);
Word free_reduce(const Word& w);
}  // namespace detail

}  // namespace cgeo
