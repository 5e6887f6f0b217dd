#pragma once

#include <vector>

#include "cgeo/cayley.hpp"
#include "cgeo/groups.hpp"

namespace cgeo {

enum class PatternKind {
    SubgroupOrbit,     // orbit of the identity under generated subgroup
    Coset,             // rep * subgroup
    DigitizedLine,     // FreeAbelian(2): rational direction or Beatty line
    GeodesicWordLine,  // Free(m): bi-infinite geodesic with given edge labels
    Fiber,             // DirectProduct: one factor free, others pinned to a base
    Neighborhood,      // closed r-neighborhood of an inner pattern
    Union,             // union of inner patterns
    QiImage,           // plane rotation + nearest-lattice-point projection
};

/// Irrational slope for Beatty-digitized lines y = floor(alpha * n).
enum class SlopeTag { None, Golden, Sqrt2, Sqrt3, InvSqrt3 };

double slope_value(SlopeTag tag);

/**
 * Declarative subset specification, realized inside a concrete ball by
 * realize().  Exact patterns carry guard 0; Neighborhood adds r, QiImage
 * adds 2 (rounding fuzz).
 */
struct Pattern {
    PatternKind kind = PatternKind::SubgroupOrbit;
    std::vector<Word> generators;   // SubgroupOrbit, Coset
    Word base;                      // Coset rep / Fiber base
    int dir_x = 0, dir_y = 0;       // DigitizedLine rational direction
    SlopeTag slope = SlopeTag::None;
    Word period;                    // GeodesicWordLine labels; empty + aperiodic => Thue-Morse
    bool thue_morse = false;
    int factor_index = 0;           // Fiber (0-based)
    int r = 0;                      // Neighborhood
    double angle = 0.0;             // QiImage
    std::vector<Pattern> inner;     // Neighborhood/QiImage (1 entry), Union

    static Pattern subgroup_orbit(std::vector<Word> gens);
    static Pattern coset(Word rep, std::vector<Word> gens);
    static Pattern digitized_line(int dx, int dy);
    static Pattern digitized_line(SlopeTag tag);
    static Pattern geodesic_word_line(Word period);
    static Pattern thue_morse_line();
    static Pattern fiber(int factor_index, Word base = {});
    static Pattern neighborhood_of(Pattern inner, int r);
    static Pattern union_of(std::vector<Pattern> parts);
    static Pattern qi_image(double angle, Pattern inner);
};

/// Instantiates the pattern inside the ball.  Deterministic; throws
/// IncompatiblePatternError if the pattern does not fit the ball's group.
VertexSet realize(const Pattern& pattern, const CayleyBall& ball);

/// Rotates each member of the realized inner pattern by the given angle in
/// the plane (FreeAbelian(2) only), rounds to the nearest lattice point with
/// ties toward the lexicographically smaller point, and intersects with the
/// ball.  Result guard = inner guard + 2.
VertexSet qi_rotate(double angle, const Pattern& inner, const CayleyBall& ball);

/// Thue-Morse letter at position n >= 0 over the alphabet {1, 2}.
Letter thue_morse_letter(long long n);

/// Exponent vector (x, y) of a FreeAbelian(2) element.
std::pair<long long, long long> plane_coords(const Element& e);

}  // namespace cgeo
