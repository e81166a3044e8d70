#pragma once

#include "disjlab/bitstring.hpp"
#include "disjlab/rational.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace disjlab {

inline constexpr std::uint64_t kDefaultSupportCap = 10'000'000;

BigInt binom(long n, long k);

/// Parameters of the uniform distribution over pairs of m-subsets of an
/// n-universe that intersect in exactly k coordinates.
struct MuParams {
    int k = 0;
    int n = 0;
    int m = 0;

    bool valid() const { return 0 <= k && k <= m && m <= n && m - k <= n - m && n <= kMaxUniverse; }
    BigInt support_size() const;

    friend bool operator==(const MuParams&, const MuParams&) = default;
};

std::string to_string(const MuParams& p);

/// Caches the (constant) point mass of a valid MuParams.
class MuDistribution {
public:
    explicit MuDistribution(MuParams p);

    const MuParams& params() const { return params_; }
    const BigInt& support_size() const { return support_; }
    const Rational& point_mass() const { return mass_; }

    bool in_support(const InputPair& pair) const {
        return pair.n() == params_.n && pair.x.popcount() == params_.m && pair.y.popcount() == params_.m &&
               pair.intersection_size() == params_.k;
    }
    Rational prob(const InputPair& pair) const;

private:
    MuParams params_;
    BigInt support_;
    Rational mass_;
};

/// Point probability; throws SupportEmpty for invalid parameters.
Rational mu_prob(const MuParams& p, const InputPair& pair);

/// Pairs ordered by x, then by intersection set, then by the rest of y.
std::vector<InputPair> enumerate_support(const MuParams& p, std::uint64_t cap = kDefaultSupportCap);

/// Calls f(pair) for every support pair without materialising the list.
template <class F>
void for_each_support_pair(const MuParams& p, F&& f) {
    const std::uint64_t all = universe_mask(p.n);
    for_each_subset_of_weight(all, p.m, [&](std::uint64_t x) {
        for_each_subset_of_weight(x, p.k, [&](std::uint64_t common) {
            for_each_subset_of_weight(all & ~x, p.m - p.k, [&](std::uint64_t rest) {
                f(InputPair(BitString(x, p.n), BitString(common | rest, p.n)));
            });
        });
    });
}

/// Uniform draw from the support.
InputPair sample_mu(const MuParams& p, std::mt19937_64& rng);

/// Uniform random `weight`-subset of the set bits of `of`.
std::uint64_t random_subset(std::uint64_t of, int weight, std::mt19937_64& rng);

enum class RemovalIdentity { I, II, III, IV };

std::string_view to_string(RemovalIdentity id);
RemovalIdentity parse_identity(std::string_view text);

struct IdentityReport {
    RemovalIdentity identity = RemovalIdentity::I;
    MuParams params;
    MuParams lhs;
    MuParams rhs;
    Rational coefficient;
    Rational max_abs_difference;
    std::uint64_t pairs_checked = 0;

    bool exact() const { return max_abs_difference == 0; }
};

/// Checks the removal identity pointwise over the support of its left-hand
/// distribution. For parameters (k,n,m):
///   I   mu_{2k,n+k,m+k}(x,y) = C(n,k)/C(n+k,2k) * mu_{k,n,m}(x',y')
///   II  mu_{k,n+k,m+k}(x,y)  = 1/C(n+k,k)        * mu_{0,n,m}(x',y')
///   III mu_{k,n,m}(x,y)      = 1/C(n,k)          * mu_{0,n-k,m-k}(x',y')
///   IV  mu_{k+1,n,m}(x,y)    = (n-k)/C(n,k+1)    * mu_{1,n-k,m-k}(x',y')
/// where x',y' drop the k lowest intersecting coordinates.
IdentityReport check_lemma4(RemovalIdentity id, const MuParams& p, std::uint64_t cap = kDefaultSupportCap);

/// C(n,k) C(n+k,k) / (C(n+k,2k) 2^{k+1}).
Rational intersection_ratio(int n, int k);

}  // namespace disjlab
