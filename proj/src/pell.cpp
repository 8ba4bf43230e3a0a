#include "toralg/pell.hpp"

#include "toralg/quad.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace toralg {

namespace {

void require_valid(const Int& n, int rhs) {
    if (n < 2) throw DomainError("Pell parameter must be >= 2");
    if (is_square(n)) throw DomainError("Pell parameter must be nonsquare");
    if (rhs != 1 && rhs != -1 && rhs != 4 && rhs != -4)
        throw DomainError("right-hand side must be one of 1, -1, 4, -4");
}

/// First convergent of sqrt(n) hitting p^2 - n q^2 == target, scanning two
/// full periods (the +-1 fundamentals always appear there).
std::optional<PellSolution> convergent_hit(const Int& n, int target) {
    ContinuedFraction cf = continued_fraction(normalize(0, 1, 1, n));
    std::size_t span = cf.preperiod.size() + 2 * cf.period.size();
    for (const auto& [p, q] : convergents(cf, span)) {
        if (p * p - n * q * q == target) return PellSolution{p, q, n, target};
    }
    return std::nullopt;
}

/// Fundamental unit of Z[sqrt(n)]: the -1 fundamental when the negative
/// equation is solvable, the +1 fundamental otherwise.
PellSolution base_unit(const Int& n, bool neg_solvable, PellCache* cache) {
    auto sol = fundamental(n, neg_solvable ? -1 : 1, cache);
    if (!sol) throw std::logic_error("base Pell unit must exist");
    return *sol;
}

/// For n ≡ 1 (mod 4): the fundamental unit of the order Z[(1+sqrt(n))/2]
/// written as (x + y sqrt(n))/2, so x^2 - n y^2 = 4*norm with norm = ±1.
/// It is either the cube root of the fundamental ±1 unit (then x, y are odd)
/// or that unit doubled.
PellSolution half_unit(const Int& n, bool neg_solvable, PellCache* cache, int& norm) {
    PellSolution eps = base_unit(n, neg_solvable, cache);
    norm = eps.rhs;
    // Cube root (a + b sqrt(n))/2 of eps satisfies b (n b^2 + 3 norm) = 2 eps.y
    // with a^2 = n b^2 + 4 norm; the cubic is strictly increasing in b.
    Int target = 2 * eps.y;
    Int lo = 1, hi = 2;
    auto cubic = [&](const Int& b) { return b * (n * b * b + 3 * norm); };
    while (cubic(hi) < target) hi *= 2;
    while (lo < hi) {
        Int mid = (lo + hi) / 2;
        if (cubic(mid) < target) lo = mid + 1;
        else hi = mid;
    }
    if (cubic(lo) == target) {
        Int a2 = n * lo * lo + 4 * norm;
        if (a2 > 0 && is_square(a2)) {
            Int a = isqrt(a2);
            // the companion cube-root equation a (n b^2 + norm) = 2 eps.x must hold too
            if (a * (n * lo * lo + norm) == 2 * eps.x)
                return PellSolution{a, lo, n, 4 * norm};
        }
    }
    return PellSolution{2 * eps.x, 2 * eps.y, n, 4 * norm};
}

std::optional<PellSolution> fundamental_pm4(const Int& n, int rhs, PellCache* cache) {
    bool want_negative = rhs == -4;
    Int mod4 = n % 4;
    if (mod4 == 0) {
        // x is forced even; (x, y) = (2a, b) with a^2 - (n/4) b^2 = rhs/4
        Int m = n / 4;
        auto sub = fundamental(m, want_negative ? -1 : 1, cache);
        if (!sub) return std::nullopt;
        return PellSolution{2 * sub->x, sub->y, n, rhs};
    }
    if (mod4 == 2 || mod4 == 3) {
        // only doubled ±1 solutions exist (odd-odd needs n ≡ 5 mod 8)
        auto sub = fundamental(n, want_negative ? -1 : 1, cache);
        if (!sub) return std::nullopt;
        return PellSolution{2 * sub->x, 2 * sub->y, n, rhs};
    }
    // n ≡ 1 (mod 4): go through the half-integer unit
    int norm = 0;
    PellSolution eta = half_unit(n, negative_solvable(n), cache, norm);
    if (want_negative) {
        if (norm != -1) return std::nullopt;
        return eta;
    }
    if (norm == 1) return eta;
    // minimal norm-+1 unit is eta^2: ((x^2 + n y^2)/2, x y)
    Int xs = (eta.x * eta.x + n * eta.y * eta.y) / 2;
    return PellSolution{xs, eta.x * eta.y, n, 4};
}

}  // namespace

bool negative_solvable(const Int& n) {
    require_valid(n, -1);
    // pre-filter: -1 is a nonresidue mod 4 and mod any prime ≡ 3 (mod 4)
    Int m4 = n % 4;
    if (m4 == 0 || m4 == 3) return false;
    Int rest = n;
    while (rest % 2 == 0) rest /= 2;
    for (Int p = 3; p < 1000 && p * p <= rest; p += 2) {
        if (rest % p == 0) {
            if (p % 4 == 3) return false;
            while (rest % p == 0) rest /= p;
        }
    }
    if (rest > 1 && rest < 1000000 && rest % 4 == 3) return false;
    // decision: period parity of sqrt(n)
    ContinuedFraction cf = continued_fraction(normalize(0, 1, 1, n));
    return cf.period.size() % 2 == 1;
}

std::optional<PellSolution> fundamental(const Int& n, int rhs, PellCache* cache) {
    require_valid(n, rhs);
    if (cache) {
        if (auto hit = cache->lookup(n, rhs)) return hit;
    }
    std::optional<PellSolution> result;
    switch (rhs) {
        case -1:
            if (negative_solvable(n)) {
                result = convergent_hit(n, -1);
                if (!result) throw std::logic_error("negative Pell solvable but no convergent hit");
            }
            break;
        case 1:
            if (negative_solvable(n)) {
                // derive from the negative fundamental: x1 = x'^2 + n y'^2, y1 = 2 x' y'
                auto neg = fundamental(n, -1, cache);
                result = PellSolution{neg->x * neg->x + n * neg->y * neg->y,
                                      2 * neg->x * neg->y, n, 1};
            } else {
                result = convergent_hit(n, 1);
                if (!result) throw std::logic_error("positive Pell equation must be solvable");
            }
            break;
        default:
            result = fundamental_pm4(n, rhs, cache);
            break;
    }
    if (result) {
        if (!result->satisfies_identity())
            throw std::logic_error("Pell solution failed the defining identity");
        if (cache) cache->store(*result);
    }
    return result;
}

PellSolution enumerate_solution(const Int& n, int rhs, const Int& k, PellCache* cache) {
    if (k < 1) throw DomainError("solution index must be >= 1");
    auto fund = fundamental(n, rhs, cache);
    if (!fund) throw DomainError("equation is unsolvable");
    Int x = fund->x, y = fund->y;
    auto exact_div = [](const Int& value, int divisor) {
        if (value % divisor != 0)
            throw std::logic_error("non-integral Pell recurrence step");
        return value / divisor;
    };
    for (Int i = 1; i < k; ++i) {
        Int xn, yn;
        switch (rhs) {
            case 1:
                xn = fund->x * x + n * fund->y * y;
                yn = fund->x * y + fund->y * x;
                break;
            case -1: {
                Int s = fund->x * fund->x + n * fund->y * fund->y;
                Int t = 2 * fund->x * fund->y;
                xn = s * x + n * t * y;
                yn = s * y + t * x;
                break;
            }
            case 4:
                xn = exact_div(fund->x * x + n * fund->y * y, 2);
                yn = exact_div(fund->x * y + fund->y * x, 2);
                break;
            case -4: {
                Int s = fund->x * fund->x + n * fund->y * fund->y;
                Int t = 2 * fund->x * fund->y;
                xn = exact_div(s * x + n * t * y, 4);
                yn = exact_div(s * y + t * x, 4);
                break;
            }
            default:
                throw DomainError("right-hand side must be one of 1, -1, 4, -4");
        }
        x = std::move(xn);
        y = std::move(yn);
    }
    PellSolution out{x, y, n, rhs};
    if (!out.satisfies_identity())
        throw std::logic_error("Pell recurrence produced a non-solution");
    return out;
}

// ---------------------------------------------------------------------------
// cache

PellCache::PellCache(std::filesystem::path file) : path_(std::move(file)) { load(); }

void PellCache::load() {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string ns, xs, ys;
        int rhs;
        if (!(row >> ns >> rhs >> xs >> ys)) continue;
        try {
            PellSolution s{Int(xs), Int(ys), Int(ns), rhs};
            if (s.n < 2 || is_square(s.n) || s.x < 0 || s.y < 0) continue;
            if (rhs != 1 && rhs != -1 && rhs != 4 && rhs != -4) continue;
            if (!s.satisfies_identity()) continue;
            entries_.emplace(std::make_pair(s.n, s.rhs), std::move(s));
        } catch (const std::exception&) {
            continue;  // garbage line
        }
    }
}

std::optional<PellSolution> PellCache::lookup(const Int& n, int rhs) const {
    std::lock_guard lock(mu_);
    auto it = entries_.find({n, rhs});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void PellCache::store(const PellSolution& solution) {
    if (!solution.satisfies_identity()) return;
    std::lock_guard lock(mu_);
    auto [it, inserted] = entries_.emplace(std::make_pair(solution.n, solution.rhs), solution);
    if (inserted && !path_.empty()) persist();
}

std::size_t PellCache::size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
}

void PellCache::persist() const {
    std::filesystem::path tmp = path_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) return;
        for (const auto& [key, s] : entries_)
            out << s.n << ' ' << s.rhs << ' ' << s.x << ' ' << s.y << '\n';
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path_, ec);
}

}  // namespace toralg
