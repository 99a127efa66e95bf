#include "abelkit/discform.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <string>

namespace abelkit {

guard_error::guard_error(int64_t required_size)
    : std::runtime_error("brute-force guard exceeded, required size "
                         + std::to_string(required_size)),
      required(required_size)
{
}

std::ostream& operator<<(std::ostream& os, const FiniteQuadraticForm& D)
{
    return os << "D(Z/" << D.d1 << "+Z/" << D.d2 << "; q=" << D.q11 << "," << D.q22
              << "; b=" << D.b12 << ")";
}

DualBasis dual_basis(const BinaryLattice& L)
{
    if (L.det() == 0)
        throw std::domain_error("dual_basis: degenerate lattice");
    Snf2 s = snf_2x2(L.gram());
    return {s.d1, s.d2, s.right};
}

FiniteQuadraticForm disc_form_of(const BinaryLattice& L)
{
    DualBasis db = dual_basis(L);
    Mat2 g = L.gram();
    auto pair = [&](int64_t ux, int64_t uy, int64_t du, int64_t vx, int64_t vy, int64_t dv) {
        // (u/du, v/dv) under the Gram form, exact.
        Rat s = Rat(checked_mul(ux, checked_mul(g.a, vx)))
              + Rat(checked_mul(ux, checked_mul(g.b, vy)))
              + Rat(checked_mul(uy, checked_mul(g.c, vx)))
              + Rat(checked_mul(uy, checked_mul(g.d, vy)));
        return s / Rat(checked_mul(du, dv));
    };
    FiniteQuadraticForm D;
    D.d1 = db.d1;
    D.d2 = db.d2;
    const Mat2& r = db.right;
    D.q11 = pair(r.a, r.c, db.d1, r.a, r.c, db.d1).mod(2);
    D.q22 = pair(r.b, r.d, db.d2, r.b, r.d, db.d2).mod(2);
    D.b12 = pair(r.a, r.c, db.d1, r.b, r.d, db.d2).mod(1);
    if (D.order() != L.det())
        throw std::logic_error("disc_form_of: |D| != det");
    return D;
}

std::ostream& operator<<(std::ostream& os, const LocalSymbol& s)
{
    switch (s.kind) {
    case LocalKind::Trivial:
        return os << "1";
    case LocalKind::EvenU:
        return os << "U_" << s.k;
    case LocalKind::EvenV:
        return os << "V_" << s.k;
    case LocalKind::Diag:
        break;
    }
    os << "A(" << s.p << ";" << s.k << "," << s.l;
    if (s.eps != 0)
        os << ";eps=" << s.eps;
    return os << ")";
}

namespace {

int valuation(int64_t n, int64_t p)
{
    int v = 0;
    while (n % p == 0) {
        n /= p;
        v++;
    }
    return v;
}

} // namespace

std::vector<LocalSymbol> local_symbols(const BinaryLattice& L)
{
    if (!L.is_positive_definite())
        throw std::domain_error("local_symbols: lattice must be positive definite");
    int64_t det = L.det();
    Snf2 s = snf_2x2(L.gram());
    std::vector<LocalSymbol> out;
    for (const auto& [p, e] : factorize(det)) {
        LocalSymbol sym;
        sym.p = p;
        sym.k = valuation(s.d1, p);
        sym.l = valuation(s.d2, p);
        if (sym.k + sym.l != e)
            throw std::logic_error("local_symbols: valuation mismatch");
        if (p == 2) {
            if (sym.k == 0)
                throw std::logic_error("local_symbols: cyclic 2-component cannot occur");
            int va = valuation(2 * L.a, 2);
            int vc = valuation(2 * L.c, 2);
            bool even_block = L.b != 0 && valuation(L.b, 2) < std::min(va, vc);
            if (even_block) {
                if (sym.k != sym.l)
                    throw std::logic_error("local_symbols: even block with unequal orders");
                int64_t eps = -(det >> (2 * sym.k));
                if ((det >> (2 * sym.k)) << (2 * sym.k) != det || mod_floor(eps, 2) == 0)
                    throw std::logic_error("local_symbols: bad even-block determinant");
                int64_t m8 = mod_floor(eps, 8);
                if (m8 != 1 && m8 != 5)
                    throw std::logic_error("local_symbols: even block eps not 1 or 5 mod 8");
                sym.kind = m8 == 1 ? LocalKind::EvenU : LocalKind::EvenV;
                sym.eps = eps;
            } else {
                sym.kind = LocalKind::Diag;
                sym.eps = sym.k == sym.l ? -(det >> (2 * sym.k)) : 0;
            }
        } else {
            sym.kind = LocalKind::Diag;
            sym.eps = sym.k == sym.l ? -(det / checked_pow(p, 2 * sym.k)) : 0;
        }
        out.push_back(sym);
    }
    return out;
}

int64_t local_order(const LocalSymbol& s)
{
    if (s.kind == LocalKind::Trivial)
        return 1;
    if (s.kind == LocalKind::EvenU)
        return checked_pow(2, s.k);
    if (s.kind == LocalKind::EvenV)
        return checked_mul(3, checked_pow(2, s.k));
    if (s.p != 2) {
        if (s.k == s.l) {
            if (s.k < 1)
                throw std::domain_error("local_order: malformed symbol");
            return checked_mul(2, checked_mul(checked_pow(s.p, s.k - 1),
                                              s.p - chi(s.p, s.eps)));
        }
        if (s.k == 0)
            return 2; // cyclic of order p^l >= 3
        return checked_mul(4, checked_pow(s.p, s.k));
    }
    // p = 2.
    if (s.k == s.l) {
        bool minus_one = mod_floor(s.eps, 4) == 3;
        if (s.k == 1)
            return minus_one ? 2 : 1;
        return checked_pow(2, minus_one ? s.k + 1 : s.k);
    }
    if (s.k < 1)
        throw std::domain_error("local_order: malformed symbol");
    bool wide = s.l - s.k >= 3;
    if (s.k == 1)
        return wide ? 4 : 2;
    return checked_pow(2, wide ? s.k + 2 : s.k + 1);
}

int64_t global_order(const BinaryLattice& L)
{
    if (!L.is_positive_definite())
        throw std::domain_error("global_order: lattice must be positive definite");
    Snf2 s = snf_2x2(L.gram());
    int64_t n = s.d1, m = s.d2;
    auto syms = local_symbols(L);

    const LocalSymbol* two = nullptr;
    for (const auto& sym : syms)
        if (sym.p == 2)
            two = &sym;

    bool case1 = two == nullptr || two->kind == LocalKind::EvenU
              || two->kind == LocalKind::EvenV;
    Rat order(1);
    Rat c(1);
    int64_t texp;
    if (case1) {
        texp = tau_tilde(n) + tau_tilde(m / n);
    } else {
        texp = tau_tilde(n / 2) + tau_tilde(m / n);
        if (two->k == two->l)
            c = mod_floor(two->eps, 4) == 3 ? Rat(1) : Rat(1, 2);
        else
            c = (two->l - two->k >= 3) ? Rat(1) : Rat(1, 2);
    }
    order = c * Rat(checked_pow(2, texp)) * Rat(n);
    for (const auto& sym : syms) {
        if (sym.k == 0)
            continue; // p does not divide n
        if (!case1 && sym.p == 2)
            continue;
        int64_t eps = sym.k == sym.l ? sym.eps : 0;
        order = order * (Rat(1) - Rat(chi(sym.p, eps), sym.p));
    }
    if (!order.is_integer() || order.num <= 0)
        throw std::logic_error("global_order: formula did not produce a positive integer");
    return order.num;
}

int64_t scaled_order(const BinaryLattice& L, int64_t n)
{
    return global_order(L.scaled(n));
}

DiscMap compose(int64_t d1, int64_t d2, const DiscMap& f, const DiscMap& g)
{
    DiscMap r;
    r.a = mod_floor(f.a * g.a + f.b * g.c, d1);
    r.b = mod_floor(f.a * g.b + f.b * g.d, d1);
    r.c = mod_floor(f.c * g.a + f.d * g.c, d2);
    r.d = mod_floor(f.c * g.b + f.d * g.d, d2);
    return r;
}

size_t DiscGroup::index_of(const DiscMap& m) const
{
    for (size_t i = 0; i < elems.size(); i++)
        if (elems[i] == m)
            return i;
    throw std::logic_error("DiscGroup::index_of: element not in group");
}

namespace {

// Integer model of a finite quadratic form: q scaled by S lives mod 2S,
// the pairing scaled by S lives mod S.
struct ScaledForm {
    int64_t d1, d2;
    int64_t s;        // common denominator scale
    int64_t n11, n22; // S * q11, S * q22 mod 2S
    int64_t nb;       // S * b12 mod S

    int64_t q_of(int64_t x, int64_t y) const
    {
        // q(x g1 + y g2) * S mod 2S; inputs are bounded by d2 <= 2^12 and
        // S <= 2 d2^2, so the products stay far below 2^63.
        int64_t m = 2 * s;
        int64_t v = (x % m) * (x % m) % m * (n11 % m) % m
                  + (y % m) * (y % m) % m * (n22 % m) % m
                  + 2 * ((x * y) % m) % m * (nb % m) % m;
        return mod_floor(v, m);
    }
    int64_t b_of(int64_t x1, int64_t y1, int64_t x2, int64_t y2) const
    {
        int64_t v = (x1 * x2) % s * (n11 % s) % s
                  + (y1 * y2) % s * (n22 % s) % s
                  + ((x1 * y2 + y1 * x2) % s) * (nb % s) % s;
        return mod_floor(v, s);
    }
};

ScaledForm scale_form(const FiniteQuadraticForm& D, int64_t s)
{
    ScaledForm f;
    f.d1 = D.d1;
    f.d2 = D.d2;
    f.s = s;
    f.n11 = mod_floor(checked_mul(s / D.q11.den, D.q11.num), 2 * s);
    f.n22 = mod_floor(checked_mul(s / D.q22.den, D.q22.num), 2 * s);
    f.nb = mod_floor(checked_mul(s / D.b12.den, D.b12.num), s);
    return f;
}

int64_t common_scale(const FiniteQuadraticForm& D1, const FiniteQuadraticForm& D2)
{
    int64_t s = std::lcm(std::lcm(D1.q11.den, D1.q22.den), D1.b12.den);
    s = std::lcm(s, std::lcm(std::lcm(D2.q11.den, D2.q22.den), D2.b12.den));
    return s;
}

bool is_bijective(int64_t d1, int64_t d2, const DiscMap& m)
{
    int64_t ker = 0;
    for (int64_t x = 0; x < d1; x++)
        for (int64_t y = 0; y < d2; y++)
            if (mod_floor(m.a * x + m.b * y, d1) == 0
                && mod_floor(m.c * x + m.d * y, d2) == 0)
                ker++;
    return ker == 1;
}

// Exhaustive scan of the candidate endomorphism space of Z/d1 + Z/d2 for
// q-preserving isomorphisms src -> dst.  Stops after max_count finds when
// max_count > 0.
std::vector<DiscMap> search_isometries(const FiniteQuadraticForm& src,
                                       const FiniteQuadraticForm& dst,
                                       int64_t guard, size_t max_count)
{
    std::vector<DiscMap> out;
    if (src.d1 != dst.d1 || src.d2 != dst.d2)
        return out;
    int64_t d1 = src.d1, d2 = src.d2;
    int64_t size = checked_mul(d1, d2);
    // The integer model needs (2 lcm of denominators)^2 < 2^63, so d2 stays
    // below 2^15 no matter how far the guard is raised.
    if (size > guard || d2 > 32768)
        throw guard_error(size);
    int64_t s = common_scale(src, dst);
    ScaledForm fs = scale_form(src, s);
    ScaledForm fd = scale_form(dst, s);
    int64_t q1 = fs.q_of(1, 0), q2 = fs.q_of(0, 1), b12 = fs.b_of(1, 0, 0, 1);
    int64_t step = d2 / d1;
    for (int64_t a = 0; a < d1; a++)
        for (int64_t c = 0; c < d2; c += step) {
            if (fd.q_of(a, c) != q1)
                continue;
            for (int64_t b = 0; b < d1; b++)
                for (int64_t d = 0; d < d2; d++) {
                    if (fd.q_of(b, d) != q2)
                        continue;
                    if (fd.b_of(a, c, b, d) != b12)
                        continue;
                    DiscMap m{a, b, c, d};
                    if (!is_bijective(d1, d2, m))
                        continue;
                    out.push_back(m);
                    if (max_count > 0 && out.size() >= max_count)
                        return out;
                }
        }
    return out;
}

} // namespace

DiscGroup brute_force_isometries(const FiniteQuadraticForm& D, int64_t guard)
{
    DiscGroup g;
    g.d1 = D.d1;
    g.d2 = D.d2;
    g.elems = search_isometries(D, D, guard, 0);
    // Put the identity first.
    DiscMap id{mod_floor(1, D.d1), 0, 0, mod_floor(1, D.d2)};
    auto it = std::find(g.elems.begin(), g.elems.end(), id);
    if (it == g.elems.end())
        throw std::logic_error("brute_force_isometries: identity missing");
    std::iter_swap(g.elems.begin(), it);
    return g;
}

int64_t brute_force_order(const FiniteQuadraticForm& D, int64_t guard)
{
    return static_cast<int64_t>(search_isometries(D, D, guard, 0).size());
}

std::vector<DiscMap> isometries_between(const FiniteQuadraticForm& D1,
                                        const FiniteQuadraticForm& D2,
                                        int64_t guard, size_t max_count)
{
    return search_isometries(D1, D2, guard, max_count);
}

bool forms_isometric(const FiniteQuadraticForm& D1, const FiniteQuadraticForm& D2,
                     int64_t guard)
{
    if (D1.order() != D2.order())
        return false;
    return !isometries_between(D1, D2, guard, 1).empty();
}

std::vector<Rat> value_multiset(const FiniteQuadraticForm& D)
{
    int64_t s = std::lcm(std::lcm(D.q11.den, D.q22.den), D.b12.den);
    ScaledForm f = scale_form(D, s);
    std::vector<Rat> vals;
    vals.reserve(static_cast<size_t>(D.order()));
    for (int64_t x = 0; x < D.d1; x++)
        for (int64_t y = 0; y < D.d2; y++)
            vals.push_back(Rat(f.q_of(x, y), s));
    std::sort(vals.begin(), vals.end());
    return vals;
}

} // namespace abelkit
