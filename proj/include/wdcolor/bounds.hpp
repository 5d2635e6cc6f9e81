#ifndef WDCOLOR_BOUNDS_HPP
#define WDCOLOR_BOUNDS_HPP

#include <algorithm>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "graph.hpp"

namespace wdcolor {

using BigInt = boost::multiprecision::cpp_int;

/// The fixed quadruple of the f* recursion.
struct BoundParams {
    int theta = 0;
    int s = 0;
    int r = 1;
    int k = 1;
};

/// True when a measured distance is within a (possibly huge) bound.
inline bool within(const Distance& d, const BigInt& bound) { return d.is_finite() && BigInt(d.value()) <= bound; }

// Chain-of-centers bound: a connected set whose vertices lie within rho of at most k centers
// has weak diameter at most 2*rho + (k-1)(2*rho+1).
inline BigInt chain_bound(const BigInt& k, const BigInt& rho) {
    BigInt hops = k > 0 ? BigInt(k - 1) : BigInt(0);
    return 2 * rho + hops * (2 * rho + 1);
}

/// Weak diameter of any coloring of a graph whose vertex set is (k, r)-centered.
inline BigInt bound_all_centered(const BigInt& k, const BigInt& r) {
    if (k < 0 || r < 0) throw ParameterError("bound_all_centered: k and r must be nonnegative");
    return chain_bound(k, r);
}

/// Weak diameter after merging a coloring of weak diameter N with a (k, r)-centered precolored set.
inline BigInt bound_add_centered(const BigInt& k, const BigInt& r, const BigInt& n) {
    if (k < 0 || r < 0) throw ParameterError("bound_add_centered: k and r must be nonnegative");
    if (n < 1) throw ParameterError("bound_add_centered: N must be at least 1");
    return chain_bound(k, n + r + 1);
}

/// Radius of the precolored ball around the root bag: (k+2)(theta+1).
inline BigInt root_ball_radius(const BoundParams& bp) { return BigInt(bp.k + 2) * (bp.theta + 1); }

namespace detail {

inline void check_bound_params(const BoundParams& bp) {
    if (bp.theta < 0 || bp.s < bp.theta || bp.r < 1 || bp.k < 1)
        throw ParameterError("bound parameters need theta >= 0, s >= theta, r >= 1, k >= 1");
}

}  // namespace detail

/// Components of the f* recursion for a fixed BoundParams.
struct FStar {
    BoundParams bp;

    BigInt n1() const { return bound_all_centered(bp.theta, root_ball_radius(bp)); }
    BigInt f1(const BigInt& x) const { return bound_add_centered(bp.theta, root_ball_radius(bp), x); }
    BigInt f2(const BigInt& x) const { return bound_add_centered(bp.s, bp.r, x); }
    BigInt f3(const BigInt& x) const { return bound_add_centered(bp.theta, root_ball_radius(bp) + bp.k + bp.r, x); }

    BigInt operator()(int x, const BigInt& y) const {
        if (x == 0) return n1() + f1(y);
        BigInt scale = BigInt(bp.k + 2) * (bp.theta + 1) * (bp.theta + 1);
        return scale * (4 + f3(f1((*this)(x - 1, n1() + f2(y)))));
    }
};

inline BigInt bound_fstar(const BoundParams& bp, int eta, const BigInt& n) {
    detail::check_bound_params(bp);
    if (eta < 0 || eta > bp.theta) throw ParameterError("bound_fstar: need 0 <= eta <= theta");
    if (n < 4) throw ParameterError("bound_fstar: N must be at least 4");
    return FStar{bp}(eta, n);
}

/// Guarantee of the treewidth extension: f*(w+1, max(N1', 4)) with (theta,s,r,k) = (w+1, w+1, 1, k).
inline BigInt bound_tw(int w, int k) {
    if (w < 1 || k < 1) throw ParameterError("bound_tw: need w >= 1 and k >= 1");
    BigInt n2 = std::max(bound_all_centered(w + 1, 2), BigInt(4));
    return bound_fstar({w + 1, w + 1, 1, k}, w + 1, n2);
}

/// (d+2)N + 2d + 2.
inline BigInt bound_small_extension(const BigInt& d, const BigInt& n) {
    if (d < 0 || n < 0) throw ParameterError("bound_small_extension: d and N must be nonnegative");
    return (d + 2) * n + 2 * d + 2;
}

/// f*(p, 3N+4) with (theta,s,r,k) = (p, p, 1, 1).
inline BigInt bound_torso(int p, const BigInt& n) {
    if (p < 1 || n < 1) throw ParameterError("bound_torso: need p >= 1 and N >= 1");
    return bound_fstar({p, p, 1, 1}, p, 3 * n + 4);
}

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace wdcolor

#endif
