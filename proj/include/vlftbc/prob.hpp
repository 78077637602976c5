#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vlftbc {

// Extended nonnegative real: a finite value or +infinity. Divergence maxima
// (B, B_j, T_j) must be decidably infinite, so no float sentinels.
struct ExtReal {
    double value = 0.0;
    bool infinite = false;

    static ExtReal inf() { return ExtReal{0.0, true}; }
    static ExtReal of(double v) { return ExtReal{v, false}; }
    bool finite() const { return !infinite; }

    friend bool operator<(const ExtReal& a, const ExtReal& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.value < b.value;
    }
    friend ExtReal min(const ExtReal& a, const ExtReal& b) { return a < b ? a : b; }
    friend ExtReal max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }
};

struct Alphabet {
    int size = 0;
    explicit Alphabet(int n) : size(n) {
        if (n < 1) throw std::invalid_argument("alphabet size must be >= 1");
    }
};

// Finite probability vector. Construction rejects negative entries and any
// total mass off 1 by more than 1e-9; smaller drift is renormalized away.
class Distribution {
  public:
    explicit Distribution(std::vector<double> probs);
    static Distribution uniform(int n);
    static Distribution point_mass(int n, int atom);

    int size() const { return static_cast<int>(p_.size()); }
    double operator[](int i) const { return p_[static_cast<size_t>(i)]; }
    const std::vector<double>& probs() const { return p_; }

    bool operator==(const Distribution& o) const { return p_ == o.p_; }

  private:
    std::vector<double> p_;
};

// Row-stochastic conditional law P(y|x); one Distribution per input symbol.
class ChannelMatrix {
  public:
    explicit ChannelMatrix(std::vector<std::vector<double>> rows);
    explicit ChannelMatrix(std::vector<Distribution> rows);
    static ChannelMatrix bsc(double crossover);
    static ChannelMatrix identity(int n);

    int input_size() const { return static_cast<int>(rows_.size()); }
    int output_size() const { return rows_.front().size(); }
    const Distribution& row(int x) const { return rows_[static_cast<size_t>(x)]; }
    double operator()(int x, int y) const { return rows_[static_cast<size_t>(x)][y]; }

    bool operator==(const ChannelMatrix& o) const { return rows_ == o.rows_; }

  private:
    std::vector<Distribution> rows_;
};

// Dense conditional tensor P(y_1,...,y_K | x). Flat layout per input symbol,
// y_1 slowest and y_K fastest.
struct JointTensor {
    std::vector<int> output_sizes;
    std::vector<double> probs;

    int block_size() const;
    // flat index of (y_1,...,y_K) inside one x-block
    int flat(const std::vector<int>& ys) const;
};

// One input, K output branches, optional joint conditional law whose
// marginals must reproduce the branches within 1e-9.
class BroadcastChannel {
  public:
    explicit BroadcastChannel(std::vector<ChannelMatrix> branches,
                              std::optional<JointTensor> joint = std::nullopt);

    int input_size() const { return branches_.front().input_size(); }
    int receivers() const { return static_cast<int>(branches_.size()); }
    const ChannelMatrix& branch(int j) const { return branches_[static_cast<size_t>(j)]; }
    const std::vector<ChannelMatrix>& branches() const { return branches_; }
    bool has_joint() const { return joint_.has_value(); }
    const JointTensor& joint() const;

  private:
    std::vector<ChannelMatrix> branches_;
    std::optional<JointTensor> joint_;
};

// D(p || q) in nats, 0 ln(0/q) = 0; infinite when p charges a q-null atom.
ExtReal kl_divergence(const Distribution& p, const Distribution& q);

// -sum p ln p in nats.
double entropy(const Distribution& p);
double entropy(const std::vector<double>& p);

// h(x) = -x ln x - (1-x) ln(1-x) on [0,1].
double binary_entropy(double x);

// I(X;Y) for X ~ px through W, in nats.
double mutual_information(const Distribution& px, const ChannelMatrix& w);

Distribution output_distribution(const Distribution& px, const ChannelMatrix& w);

// Sum the joint tensor over all coordinates except branch j.
ChannelMatrix marginalize_joint(const BroadcastChannel& bc, int j);

// Cascade X -> Y -> Z: rows of (first o second).
ChannelMatrix compose(const ChannelMatrix& first, const ChannelMatrix& second);

// Product joint (branches conditionally independent given the input).
JointTensor product_joint(const std::vector<ChannelMatrix>& branches);

// Joint for the cascade X -> Y_K -> ... -> Y_1 given the stagewise channels;
// stages[0] is P(y_K|x), stages[k] the channel from Y_{K-k} to Y_{K-k-1}.
JointTensor cascade_joint(const std::vector<ChannelMatrix>& stages);

}  // namespace vlftbc
