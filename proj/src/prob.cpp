#include "vlftbc/prob.hpp"

#include <cmath>
#include <numeric>

namespace vlftbc {

namespace {
constexpr double kSumDrift = 1e-9;   // construction renormalizes up to this
constexpr double kMarginalTol = 1e-9;
}  // namespace

Distribution::Distribution(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) throw std::invalid_argument("distribution must be non-empty");
    double sum = 0.0;
    for (double v : p_) {
        if (!(v >= 0.0)) throw std::invalid_argument("distribution entry negative or NaN");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kSumDrift)
        throw std::invalid_argument("distribution mass " + std::to_string(sum) +
                                    " deviates from 1 by more than 1e-9");
    for (double& v : p_) v /= sum;
}

Distribution Distribution::uniform(int n) {
    return Distribution(std::vector<double>(static_cast<size_t>(n), 1.0 / n));
}

Distribution Distribution::point_mass(int n, int atom) {
    std::vector<double> p(static_cast<size_t>(n), 0.0);
    p.at(static_cast<size_t>(atom)) = 1.0;
    return Distribution(std::move(p));
}

ChannelMatrix::ChannelMatrix(std::vector<std::vector<double>> rows) {
    if (rows.empty()) throw std::invalid_argument("channel needs at least one row");
    rows_.reserve(rows.size());
    for (auto& r : rows) rows_.emplace_back(std::move(r));
    for (const auto& r : rows_)
        if (r.size() != rows_.front().size())
            throw std::invalid_argument("channel rows differ in length");
}

ChannelMatrix::ChannelMatrix(std::vector<Distribution> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("channel needs at least one row");
    for (const auto& r : rows_)
        if (r.size() != rows_.front().size())
            throw std::invalid_argument("channel rows differ in length");
}

ChannelMatrix ChannelMatrix::bsc(double crossover) {
    if (crossover < 0.0 || crossover > 1.0)
        throw std::invalid_argument("crossover outside [0,1]");
    return ChannelMatrix(std::vector<std::vector<double>>{
        {1.0 - crossover, crossover}, {crossover, 1.0 - crossover}});
}

ChannelMatrix ChannelMatrix::identity(int n) {
    std::vector<std::vector<double>> rows(static_cast<size_t>(n),
                                          std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) rows[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
    return ChannelMatrix(std::move(rows));
}

int JointTensor::block_size() const {
    int b = 1;
    for (int s : output_sizes) b *= s;
    return b;
}

int JointTensor::flat(const std::vector<int>& ys) const {
    int idx = 0;
    for (size_t j = 0; j < output_sizes.size(); ++j) idx = idx * output_sizes[j] + ys[j];
    return idx;
}

BroadcastChannel::BroadcastChannel(std::vector<ChannelMatrix> branches,
                                   std::optional<JointTensor> joint)
    : branches_(std::move(branches)), joint_(std::move(joint)) {
    if (branches_.empty()) throw std::invalid_argument("broadcast channel needs K >= 1");
    const int nx = branches_.front().input_size();
    for (const auto& b : branches_)
        if (b.input_size() != nx)
            throw std::invalid_argument("branches disagree on input alphabet");
    if (!joint_) return;

    if (static_cast<int>(joint_->output_sizes.size()) != receivers())
        throw std::invalid_argument("joint tensor rank != number of branches");
    for (int j = 0; j < receivers(); ++j)
        if (joint_->output_sizes[static_cast<size_t>(j)] != branches_[static_cast<size_t>(j)].output_size())
            throw std::invalid_argument("joint tensor shape disagrees with branch outputs");
    const int block = joint_->block_size();
    if (static_cast<int>(joint_->probs.size()) != nx * block)
        throw std::invalid_argument("joint tensor size != |X| * prod |Y_j|");
    for (int x = 0; x < nx; ++x) {
        double sum = 0.0;
        for (int i = 0; i < block; ++i) {
            double v = joint_->probs[static_cast<size_t>(x * block + i)];
            if (!(v >= 0.0)) throw std::invalid_argument("joint tensor entry negative or NaN");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kSumDrift)
            throw std::invalid_argument("joint slice for x=" + std::to_string(x) +
                                        " is not a distribution");
    }
    for (int j = 0; j < receivers(); ++j) {
        ChannelMatrix m = marginalize_joint(*this, j);
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < m.output_size(); ++y)
                if (std::abs(m(x, y) - branch(j)(x, y)) > kMarginalTol)
                    throw std::invalid_argument(
                        "joint marginal of branch " + std::to_string(j + 1) +
                        " deviates from the declared matrix by more than 1e-9");
    }
}

const JointTensor& BroadcastChannel::joint() const {
    if (!joint_) throw std::logic_error("broadcast channel has no joint tensor");
    return *joint_;
}

ExtReal kl_divergence(const Distribution& p, const Distribution& q) {
    if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: length mismatch");
    double sum = 0.0;
    for (int y = 0; y < p.size(); ++y) {
        if (p[y] == 0.0) continue;
        if (q[y] == 0.0) return ExtReal::inf();
        sum += p[y] * std::log(p[y] / q[y]);
    }
    return ExtReal::of(sum < 0.0 ? 0.0 : sum);
}

double entropy(const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log(v);
    return h < 0.0 ? 0.0 : h;
}

double entropy(const Distribution& p) { return entropy(p.probs()); }

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("binary_entropy: argument outside [0,1]");
    double h = 0.0;
    if (x > 0.0) h -= x * std::log(x);
    if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x);
    return h < 0.0 ? 0.0 : h;
}

Distribution output_distribution(const Distribution& px, const ChannelMatrix& w) {
    if (px.size() != w.input_size())
        throw std::invalid_argument("output_distribution: dimension mismatch");
    std::vector<double> out(static_cast<size_t>(w.output_size()), 0.0);
    for (int x = 0; x < w.input_size(); ++x)
        for (int y = 0; y < w.output_size(); ++y) out[static_cast<size_t>(y)] += px[x] * w(x, y);
    double sum = std::accumulate(out.begin(), out.end(), 0.0);
    for (double& v : out) v /= sum;
    return Distribution(std::move(out));
}

double mutual_information(const Distribution& px, const ChannelMatrix& w) {
    if (px.size() != w.input_size())
        throw std::invalid_argument("mutual_information: dimension mismatch");
    Distribution qy = output_distribution(px, w);
    double sum = 0.0;
    for (int x = 0; x < w.input_size(); ++x) {
        if (px[x] == 0.0) continue;
        for (int y = 0; y < w.output_size(); ++y) {
            double v = w(x, y);
            if (v > 0.0) sum += px[x] * v * std::log(v / qy[y]);
        }
    }
    return sum < 0.0 ? 0.0 : sum;
}

ChannelMatrix marginalize_joint(const BroadcastChannel& bc, int j) {
    const JointTensor& t = bc.joint();
    if (j < 0 || j >= bc.receivers()) throw std::invalid_argument("branch index out of range");
    const int block = t.block_size();
    int inner = 1;  // product of sizes after coordinate j
    for (size_t k = static_cast<size_t>(j) + 1; k < t.output_sizes.size(); ++k)
        inner *= t.output_sizes[k];
    const int nyj = t.output_sizes[static_cast<size_t>(j)];
    std::vector<std::vector<double>> rows(static_cast<size_t>(bc.input_size()),
                                          std::vector<double>(static_cast<size_t>(nyj), 0.0));
    for (int x = 0; x < bc.input_size(); ++x)
        for (int i = 0; i < block; ++i)
            rows[static_cast<size_t>(x)][static_cast<size_t>((i / inner) % nyj)] +=
                t.probs[static_cast<size_t>(x * block + i)];
    return ChannelMatrix(std::move(rows));
}

ChannelMatrix compose(const ChannelMatrix& first, const ChannelMatrix& second) {
    if (first.output_size() != second.input_size())
        throw std::invalid_argument("compose: inner dimensions disagree");
    std::vector<std::vector<double>> rows(
        static_cast<size_t>(first.input_size()),
        std::vector<double>(static_cast<size_t>(second.output_size()), 0.0));
    for (int x = 0; x < first.input_size(); ++x)
        for (int y = 0; y < first.output_size(); ++y)
            for (int z = 0; z < second.output_size(); ++z)
                rows[static_cast<size_t>(x)][static_cast<size_t>(z)] += first(x, y) * second(y, z);
    return ChannelMatrix(std::move(rows));
}

JointTensor product_joint(const std::vector<ChannelMatrix>& branches) {
    JointTensor t;
    for (const auto& b : branches) t.output_sizes.push_back(b.output_size());
    const int nx = branches.front().input_size();
    const int block = t.block_size();
    t.probs.assign(static_cast<size_t>(nx * block), 0.0);
    std::vector<int> ys(branches.size(), 0);
    for (int x = 0; x < nx; ++x) {
        std::fill(ys.begin(), ys.end(), 0);
        for (int i = 0; i < block; ++i) {
            double p = 1.0;
            for (size_t j = 0; j < branches.size(); ++j) p *= branches[j](x, ys[j]);
            t.probs[static_cast<size_t>(x * block + i)] = p;
            for (int j = static_cast<int>(branches.size()) - 1; j >= 0; --j) {
                if (++ys[static_cast<size_t>(j)] < t.output_sizes[static_cast<size_t>(j)]) break;
                ys[static_cast<size_t>(j)] = 0;
            }
        }
    }
    return t;
}

JointTensor cascade_joint(const std::vector<ChannelMatrix>& stages) {
    // stages[0]: X -> Y_K, stages[k]: Y_{K-k+1} -> Y_{K-k}; joint over (Y_1..Y_K).
    const int K = static_cast<int>(stages.size());
    JointTensor t;
    t.output_sizes.assign(static_cast<size_t>(K), 0);
    for (int k = 0; k < K; ++k)
        t.output_sizes[static_cast<size_t>(K - 1 - k)] = stages[static_cast<size_t>(k)].output_size();
    const int nx = stages.front().input_size();
    const int block = t.block_size();
    t.probs.assign(static_cast<size_t>(nx * block), 0.0);
    std::vector<int> ys(static_cast<size_t>(K), 0);
    for (int x = 0; x < nx; ++x) {
        std::fill(ys.begin(), ys.end(), 0);
        for (int i = 0; i < block; ++i) {
            // chain runs y_K (from x) down to y_1
            double p = stages[0](x, ys[static_cast<size_t>(K - 1)]);
            for (int k = 1; k < K; ++k)
                p *= stages[static_cast<size_t>(k)](ys[static_cast<size_t>(K - k)],
                                                    ys[static_cast<size_t>(K - k - 1)]);
            t.probs[static_cast<size_t>(x * block + i)] = p;
            for (int j = K - 1; j >= 0; --j) {
                if (++ys[static_cast<size_t>(j)] < t.output_sizes[static_cast<size_t>(j)]) break;
                ys[static_cast<size_t>(j)] = 0;
            }
        }
    }
    return t;
}

}  // namespace vlftbc
