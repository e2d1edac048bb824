#include "dwv/indexalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dwv {

InternalMetric InternalMetric::lorentzian(int n) {
    InternalMetric h;
    h.signs.assign(static_cast<std::size_t>(n), 1);
    if (n > 0) h.signs[0] = -1;
    return h;
}

int InternalMetric::signature_sign() const {
    int s = 1;
    for (int x : signs)
        if (x < 0) s = -s;
    return s;
}

int levi_civita(const IndexTuple& t, int n) {
    if (static_cast<int>(t.size()) != n) throw std::invalid_argument("levi_civita: tuple length must equal n");
    for (int x : t)
        if (x < 0 || x >= n) throw std::out_of_range("levi_civita: index out of range");
    int sign = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (t[i] == t[j]) return 0;
            if (t[i] > t[j]) sign = -sign;
        }
    return sign;
}

int generalized_kronecker(const IndexTuple& upper, const IndexTuple& lower) {
    if (upper.size() != lower.size()) throw std::invalid_argument("generalized_kronecker: length mismatch");
    const std::size_t k = upper.size();
    // perm[i] = position in lower of upper[i].
    IndexTuple perm(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j)
            if (upper[i] == upper[j]) return 0;
        auto it = std::find(lower.begin(), lower.end(), upper[i]);
        if (it == lower.end()) return 0;
        perm[i] = static_cast<int>(it - lower.begin());
    }
    int sign = 1;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

void for_each_tuple(int len, int n, const std::function<void(const IndexTuple&)>& f) {
    IndexTuple t(static_cast<std::size_t>(len), 0);
    if (len == 0) {
        f(t);
        return;
    }
    while (true) {
        f(t);
        int i = len - 1;
        while (i >= 0 && ++t[i] == n) t[i--] = 0;
        if (i < 0) return;
    }
}

void for_each_permutation(int n, const std::function<void(const IndexTuple&, int)>& f) {
    IndexTuple p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
        int sign = 1;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[i] > p[j]) sign = -sign;
        f(p, sign);
    } while (std::next_permutation(p.begin(), p.end()));
}

namespace {

long factorial(int k) {
    long r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

IndexTuple concat(const IndexTuple& a, const IndexTuple& b) {
    IndexTuple r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

/// sum_sigma sgn(sigma) prod_i delta^{a_{sigma(i)}}_{b_i}, by explicit enumeration.
long antisymmetrized_delta(const IndexTuple& a, const IndexTuple& b) {
    long total = 0;
    for_each_permutation(static_cast<int>(a.size()), [&](const IndexTuple& p, int sign) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[static_cast<std::size_t>(p[i])] != b[i]) return;
        total += sign;
    });
    return total;
}

}  // namespace

std::vector<IdentityReport> epsilon_identity_suite(int n) {
    if (n != 3 && n != 4) throw std::invalid_argument("epsilon_identity_suite: n must be 3 or 4");
    std::vector<IdentityReport> out;
    for (int p = 1; p <= n; ++p) {
        IdentityReport r{"contraction_p" + std::to_string(p)};
        for_each_tuple(n - p, n, [&](const IndexTuple& mu) {
            for_each_tuple(n - p, n, [&](const IndexTuple& nu) {
                long sum = 0;
                for_each_tuple(p, n, [&](const IndexTuple& rho) {
                    sum += levi_civita(concat(mu, rho), n) * levi_civita(concat(nu, rho), n);
                });
                ++r.evaluated;
                if (sum != factorial(p) * generalized_kronecker(mu, nu)) ++r.mismatches;
            });
        });
        out.push_back(r);
    }
    for (int p = 0; p <= n; ++p) {
        IdentityReport r{"antisymmetrized_p" + std::to_string(p)};
        for_each_tuple(n - p, n, [&](const IndexTuple& a) {
            for_each_tuple(n - p, n, [&](const IndexTuple& b) {
                long sum = 0;
                for_each_tuple(p, n, [&](const IndexTuple& mu) {
                    sum += levi_civita(concat(mu, a), n) * levi_civita(concat(mu, b), n);
                });
                // p!(n-p)! times the weight-1/(n-p)! antisymmetrization.
                ++r.evaluated;
                if (sum != factorial(p) * antisymmetrized_delta(a, b)) ++r.mismatches;
            });
        });
        out.push_back(r);
    }
    {
        IdentityReport r{"full_contraction"};
        long sum = 0;
        for_each_tuple(n, n, [&](const IndexTuple& mu) { sum += levi_civita(mu, n) * levi_civita(mu, n); });
        r.evaluated = 1;
        r.mismatches = sum == factorial(n) ? 0 : 1;
        out.push_back(r);
    }
    {
        IdentityReport r{"determinant_symbolic"};
        PMatrix e(static_cast<std::size_t>(n), std::vector<Poly>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int m = 0; m < n; ++m) e[i][m] = Poly::variable(static_cast<VarId>(i * n + m));
        r.evaluated = 1;
        r.mismatches = vielbein_determinant(e, DeterminantMode::EpsilonFormula) ==
                               vielbein_determinant(e, DeterminantMode::Cofactor)
                           ? 0
                           : 1;
        out.push_back(r);
    }
    IdentityReport kron{"determinant_kronecker"}, inv{"inverse_determinant"}, single{"density_single"},
        pair{"density_pair"}, frame{"frame_relations"};
    for (std::uint64_t s = 1; s <= 5; ++s) {
        RMatrix e = random_vielbein(n, 1000 + s);
        Rational det = determinant(e);
        // det = (1/n!) sum delta^{nu..}_{mu..} m^{mu1}_{nu1} ... m^{mun}_{nun}
        Rational kd;
        for_each_permutation(n, [&](const IndexTuple& mu, int) {
            for_each_permutation(n, [&](const IndexTuple& nu, int) {
                Rational prod(generalized_kronecker(nu, mu));
                for (int i = 0; i < n; ++i) prod *= e[mu[i]][nu[i]];
                kd += prod;
            });
        });
        ++kron.evaluated;
        if (kd / Rational(factorial(n)) != det) ++kron.mismatches;

        RMatrix ei = inverse(e);  // ei[mu][I]
        Rational idet;
        for_each_permutation(n, [&](const IndexTuple& I, int sI) {
            for_each_permutation(n, [&](const IndexTuple& mu, int sm) {
                Rational prod(sI * sm);
                for (int k = 0; k < n; ++k) prod *= ei[mu[k]][I[k]];
                idet += prod;
            });
        });
        ++inv.evaluated;
        if (idet / Rational(factorial(n)) != Rational(1) / det) ++inv.mismatches;

        RMatrix es = density_single(e);
        for (int m = 0; m < n; ++m)
            for (int i = 0; i < n; ++i) {
                ++single.evaluated;
                if (es[m][i] != det * ei[m][i]) ++single.mismatches;
            }

        PMatrix ep(static_cast<std::size_t>(n), std::vector<Poly>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int m = 0; m < n; ++m) ep[i][m] = Poly(e[i][m]);
        auto pt = density_pair(ep);
        for (int I = 0; I < n; ++I)
            for (int J = 0; J < n; ++J)
                for (int m = 0; m < n; ++m)
                    for (int k = 0; k < n; ++k) {
                        Rational expect = det * (ei[m][I] * ei[k][J] - ei[k][I] * ei[m][J]) / Rational(2);
                        ++pair.evaluated;
                        if (pt[((I * n + J) * n + m) * n + k].constant_term() != expect) ++pair.mismatches;
                    }

        for (const auto& rep : frame_epsilon_relations(e, InternalMetric::lorentzian(n))) {
            frame.evaluated += rep.evaluated;
            frame.mismatches += rep.mismatches;
        }
    }
    out.push_back(kron);
    out.push_back(inv);
    out.push_back(single);
    out.push_back(pair);
    out.push_back(frame);
    return out;
}

Poly vielbein_determinant(const PMatrix& e, DeterminantMode mode) {
    const int n = static_cast<int>(e.size());
    if (n == 0) return Poly(1);
    for (const auto& row : e)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("determinant of a non-square matrix");
    if (mode == DeterminantMode::EpsilonFormula) {
        PolyAccumulator acc;
        for_each_permutation(n, [&](const IndexTuple& I, int sI) {
            for_each_permutation(n, [&](const IndexTuple& mu, int sm) {
                Poly prod(sI * sm);
                for (int k = 0; k < n; ++k) prod = prod * e[I[k]][mu[k]];
                acc.add(prod);
            });
        });
        return acc.finish().scaled(Rational(1, factorial(n)));
    }
    if (n == 1) return e[0][0];
    Poly sum;
    for (int c = 0; c < n; ++c) {
        if (e[0][c].is_zero()) continue;
        PMatrix minor;
        for (int r = 1; r < n; ++r) {
            std::vector<Poly> row;
            for (int k = 0; k < n; ++k)
                if (k != c) row.push_back(e[r][k]);
            minor.push_back(row);
        }
        Poly term = e[0][c] * vielbein_determinant(minor, DeterminantMode::Cofactor);
        sum += c % 2 ? -term : term;
    }
    return sum;
}

Rational determinant(const RMatrix& m) {
    const std::size_t n = m.size();
    RMatrix a = m;
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c].is_zero()) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c].is_zero()) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

RMatrix inverse(const RMatrix& m) {
    const std::size_t n = m.size();
    RMatrix a = m;
    RMatrix inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("singular matrix");
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        Rational p = a[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            a[c][k] /= p;
            inv[c][k] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Rational f = a[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

std::vector<Poly> density_pair(const PMatrix& e) {
    const int n = static_cast<int>(e.size());
    if (n != 3 && n != 4) throw std::invalid_argument("density_pair: n must be 3 or 4");
    std::vector<Poly> out(static_cast<std::size_t>(n * n * n * n));
    const Rational w(1, 2 * factorial(n - 2));
    for_each_tuple(4, n, [&](const IndexTuple& t) {
        const int I = t[0], J = t[1], mu = t[2], nu = t[3];
        PolyAccumulator acc;
        for_each_tuple(n - 2, n, [&](const IndexTuple& K) {
            int sI = levi_civita(concat({I, J}, K), n);
            if (sI == 0) return;
            for_each_tuple(n - 2, n, [&](const IndexTuple& rho) {
                int sm = levi_civita(concat({mu, nu}, rho), n);
                if (sm == 0) return;
                Poly prod(sI * sm);
                for (int k = 0; k < n - 2; ++k) prod = prod * e[K[k]][rho[k]];
                acc.add(prod);
            });
        });
        out[((I * n + J) * n + mu) * n + nu] = acc.finish().scaled(w);
    });
    return out;
}

RMatrix density_single(const RMatrix& e) {
    const int n = static_cast<int>(e.size());
    if (determinant(e).is_zero()) throw std::domain_error("density_single: singular vielbein");
    RMatrix out(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int mu = 0; mu < n; ++mu)
        for (int I = 0; I < n; ++I) {
            Rational sum;
            for_each_tuple(n - 1, n, [&](const IndexTuple& J) {
                int sI = levi_civita(concat({I}, J), n);
                if (sI == 0) return;
                for_each_tuple(n - 1, n, [&](const IndexTuple& m) {
                    int sm = levi_civita(concat({mu}, m), n);
                    if (sm == 0) return;
                    Rational prod(sI * sm);
                    for (int k = 0; k < n - 1; ++k) prod *= e[J[k]][m[k]];
                    sum += prod;
                });
            });
            out[mu][I] = sum / Rational(factorial(n - 1));
        }
    return out;
}

std::vector<IdentityReport> frame_epsilon_relations(const RMatrix& e, const InternalMetric& h) {
    const int n = static_cast<int>(e.size());
    Rational det = determinant(e);
    if (det.is_zero()) throw std::domain_error("frame_epsilon_relations: singular vielbein");
    RMatrix ei = inverse(e);  // ei[mu][I]
    const std::size_t total = static_cast<std::size_t>(std::pow(n, n));
    auto flat = [n](const IndexTuple& t) {
        std::size_t k = 0;
        for (int x : t) k = k * static_cast<std::size_t>(n) + static_cast<std::size_t>(x);
        return k;
    };

    // Lower tensor from the frame: eps_{I..} e^I_mu ...
    std::vector<Rational> lower(total);
    IdentityReport lowered{"frame_lower_tensor"};
    for_each_tuple(n, n, [&](const IndexTuple& mu) {
        Rational sum;
        for_each_permutation(n, [&](const IndexTuple& I, int s) {
            Rational prod(s);
            for (int k = 0; k < n; ++k) prod *= e[I[k]][mu[k]];
            sum += prod;
        });
        lower[flat(mu)] = sum;
        ++lowered.evaluated;
        if (sum != det * Rational(levi_civita(mu, n))) ++lowered.mismatches;
    });

    // Raise every index with g^{-1}, g = e^T h e.
    RMatrix g(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int I = 0; I < n; ++I) g[a][b] += Rational(h(I)) * e[I][a] * e[I][b];
    RMatrix gi = inverse(g);
    std::vector<Rational> cur = lower;
    for (int slot = 0; slot < n; ++slot) {
        std::vector<Rational> next(total);
        for_each_tuple(n, n, [&](const IndexTuple& t) {
            Rational sum;
            IndexTuple s = t;
            for (int a = 0; a < n; ++a) {
                s[slot] = a;
                sum += gi[t[slot]][a] * cur[flat(s)];
            }
            next[flat(t)] = sum;
        });
        cur = std::move(next);
    }
    IdentityReport raised{"frame_upper_tensor"};
    for_each_tuple(n, n, [&](const IndexTuple& mu) {
        ++raised.evaluated;
        Rational expect = Rational(h.signature_sign()) / det * Rational(levi_civita(mu, n));
        if (cur[flat(mu)] != expect) ++raised.mismatches;
    });

    IdentityReport contracted{"frame_full_contraction"};
    Rational full;
    for (std::size_t k = 0; k < total; ++k) full += cur[k] * lower[k];
    contracted.evaluated = 1;
    if (full != Rational(h.signature_sign() * factorial(n))) contracted.mismatches = 1;

    IdentityReport inverted{"frame_inversion"};
    for_each_tuple(n, n, [&](const IndexTuple& I) {
        Rational sum;
        for_each_permutation(n, [&](const IndexTuple& mu, int) {
            Rational prod = lower[flat(mu)];
            for (int k = 0; k < n; ++k) prod *= ei[mu[k]][I[k]];
            sum += prod;
        });
        ++inverted.evaluated;
        if (sum != Rational(levi_civita(I, n))) ++inverted.mismatches;
    });

    IdentityReport sig{"lorentzian_signature_sign"};
    sig.evaluated = 1;
    if (h.signature_sign() != -1) sig.mismatches = 1;
    return {lowered, raised, contracted, inverted, sig};
}

Rational eh_palatini_reduction_check(const RMatrix& e, const InternalMetric& h, std::uint64_t seed) {
    const int n = static_cast<int>(e.size());
    if (n != 3 && n != 4) throw std::invalid_argument("eh_palatini_reduction_check: n must be 3 or 4");
    Rational det = determinant(e);
    if (det.is_zero()) throw std::domain_error("eh_palatini_reduction_check: singular vielbein");
    // sqrt|g| with g = e^T h e; |det g| = det(e)^2 |det h| and |det h| = 1.
    Rational det_g = det * det * Rational(h.signature_sign());
    if (det_g.abs() != det * det) throw std::logic_error("internal metric is not unimodular");
    const Rational sqrt_g = det.abs();

    SplitMix64 rng(seed);
    auto idx = [n](int a, int b, int c, int d) { return static_cast<std::size_t>(((a * n + b) * n + c) * n + d); };
    std::vector<Rational> R(static_cast<std::size_t>(n * n * n * n));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    Rational v(rng.uniform(-9, 9), rng.uniform(1, 5));
                    R[idx(a, b, c, d)] = v;
                    R[idx(b, a, c, d)] = -v;
                    R[idx(a, b, d, c)] = -v;
                    R[idx(b, a, d, c)] = v;
                }

    // delta^rho_[alpha delta^sigma_beta] R^{alpha beta}_{rho sigma} with weight 1/2.
    Rational trace;
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) trace += (R[idx(r, s, r, s)] - R[idx(s, r, r, s)]) / Rational(2);
    Rational lhs = sqrt_g * trace;

    std::vector<Rational> F(R.size());
    for (int K = 0; K < n; ++K)
        for (int L = 0; L < n; ++L)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    Rational sum;
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b) sum += e[K][a] * e[L][b] * R[idx(a, b, r, s)];
                    F[idx(K, L, r, s)] = sum;
                }

    Rational rhs;
    const int free = n - 2;  // frame legs contracted directly with e
    for_each_permutation(n, [&](const IndexTuple& I, int sI) {
        for_each_permutation(n, [&](const IndexTuple& mu, int sm) {
            Rational prod(sI * sm);
            for (int k = 0; k < free; ++k) prod *= e[I[k]][mu[k]];
            prod *= F[idx(I[free], I[free + 1], mu[free], mu[free + 1])];
            rhs += prod;
        });
    });
    rhs *= n == 4 ? Rational(1, 4) : Rational(1, 2);
    return lhs - rhs;
}

RMatrix random_vielbein(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    while (true) {
        RMatrix e(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
        for (auto& row : e)
            for (auto& x : row) x = Rational(rng.uniform(-3, 3));
        if (determinant(e).sign() > 0) return e;
    }
}

}  // namespace dwv
