#pragma once

// Integral classes of the magic manifold N near the fibered face F with
// vertices (1,0,0), (1,1,1), (0,1,0), (0,0,-1). The remaining fibered faces
// are images of F under homeomorphisms of N, so only F is modelled here.

#include "fibercone/errors.hpp"
#include "fibercone/numeric.hpp"

#include <array>
#include <ostream>
#include <sstream>

namespace fibercone {

/// The class x*alpha + y*beta + z*gamma in H^1(N; Z).
struct IntegralClass {
    Integer x;
    Integer y;
    Integer z;

    friend bool operator==(const IntegralClass&, const IntegralClass&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const IntegralClass& c)
{
    return os << '(' << c.x << ',' << c.y << ',' << c.z << ')';
}

inline IntegralClass operator*(const Integer& m, const IntegralClass& c)
{
    return {m * c.x, m * c.y, m * c.z};
}

/// Coordinates in the basis (1,1,1), (0,1,0), (1,1,0). All three are nonnegative.
class PlusClass {
public:
    PlusClass(Integer i, Integer j, Integer k) : i_(std::move(i)), j_(std::move(j)), k_(std::move(k))
    {
        if (i_ < 0 || j_ < 0 || k_ < 0)
            throw DomainError("(i,j,k)+ coordinates must be nonnegative");
    }

    const Integer& i() const { return i_; }
    const Integer& j() const { return j_; }
    const Integer& k() const { return k_; }

    friend bool operator==(const PlusClass&, const PlusClass&) = default;

private:
    Integer i_;
    Integer j_;
    Integer k_;
};

inline IntegralClass plus_to_xyz(const PlusClass& p)
{
    return {p.i() + p.k(), p.i() + p.j() + p.k(), p.i()};
}

/// A point of the plane x + y - z = 1 carrying the norm-one class of a ray.
struct ProjectiveClass {
    Rational x;
    Rational y;
    Rational z;

    friend bool operator==(const ProjectiveClass&, const ProjectiveClass&) = default;
};

struct FiberInvariants {
    Integer norm;                       // |chi(S)|
    Integer boundary_count;             // number of punctures
    Integer genus;
    std::array<Integer, 3> per_torus;   // punctures on each boundary torus of N
};

/// Open cone over int(F): x > 0, y > 0, x > z, y > z.
inline bool in_fibered_cone(const IntegralClass& c)
{
    return c.x > 0 && c.y > 0 && c.x > c.z && c.y > c.z;
}

inline bool is_primitive(const IntegralClass& c)
{
    return gcd(gcd(c.x, c.y), c.z) == 1;
}

inline void require_in_cone(const IntegralClass& c)
{
    if (!in_fibered_cone(c)) {
        std::ostringstream msg;
        msg << "class " << c << " is outside the fibered cone over F";
        throw DomainError(msg.str());
    }
}

/// Thurston norm, valid on the fibered cone only.
inline Integer thurston_norm(const IntegralClass& c)
{
    require_in_cone(c);
    return c.x + c.y - c.z;
}

inline FiberInvariants fiber_invariants(const IntegralClass& c)
{
    require_in_cone(c);
    if (!is_primitive(c)) {
        std::ostringstream msg;
        msg << "class " << c << " is not primitive";
        throw DomainError(msg.str());
    }
    FiberInvariants inv;
    inv.norm = c.x + c.y - c.z;
    inv.per_torus = {gcd(c.x, c.y + c.z), gcd(c.y, c.z + c.x), gcd(c.z, c.x + c.y)};
    inv.boundary_count = inv.per_torus[0] + inv.per_torus[1] + inv.per_torus[2];
    // norm = 2g - 2 + n
    const Integer twice_genus = inv.norm + 2 - inv.boundary_count;
    ensure(twice_genus >= 0 && twice_genus % 2 == 0, "fiber Euler characteristic and puncture count have mismatched parity");
    inv.genus = twice_genus / 2;
    return inv;
}

inline ProjectiveClass projectivize(const IntegralClass& c)
{
    const Integer norm = thurston_norm(c);
    return {Rational(c.x, norm), Rational(c.y, norm), Rational(c.z, norm)};
}

/// Limit of projectivize((1, n^p, n^q)+) as n grows.
inline ProjectiveClass projective_limit_family(unsigned p, unsigned q)
{
    if (p == 0 || q == 0)
        throw DomainError("family exponents must be positive");
    if (p == q)
        return {Rational(1, 3), Rational(2, 3), Rational(0)};
    if (p < q)
        return {Rational(1, 2), Rational(1, 2), Rational(0)};
    return {Rational(0), Rational(1), Rational(0)};
}

/// The family member (1, n^p, n^q)+.
inline PlusClass family_member(const Integer& n, unsigned p, unsigned q)
{
    return PlusClass(1, pow(n, p), pow(n, q));
}

} // namespace fibercone
