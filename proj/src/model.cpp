#include "treepin/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace treepin {

namespace {

void check_distribution(std::span<const double> p, const char* what) {
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0) || x > 1.0) throw std::invalid_argument(std::string(what) + " has an entry outside [0,1]");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance)
        throw std::invalid_argument(std::string(what) + " sums to " + std::to_string(sum) + ", not 1");
}

}  // namespace

WiretapChannel::WiretapChannel(std::size_t inputs, std::size_t outputs, std::vector<double> row_major)
    : inputs_(inputs), outputs_(outputs), matrix_(std::move(row_major)) {
    if (inputs < 1 || outputs < 1) throw std::invalid_argument("channel alphabets must be nonempty");
    if (matrix_.size() != inputs * outputs) throw std::invalid_argument("channel matrix has the wrong shape");
    for (std::size_t v = 0; v < inputs_; ++v) check_distribution(row(v), "channel row");
}

WiretapChannel WiretapChannel::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("channel matrix has no rows");
    const std::size_t outputs = rows.front().size();
    std::vector<double> flat;
    for (const auto& r : rows) {
        if (r.size() != outputs) throw std::invalid_argument("channel matrix rows differ in length");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return WiretapChannel(rows.size(), outputs, std::move(flat));
}

WiretapChannel WiretapChannel::binary_symmetric(double crossover) {
    if (!(crossover >= 0.0 && crossover <= 1.0)) throw std::invalid_argument("crossover must lie in [0,1]");
    return WiretapChannel(2, 2, {1.0 - crossover, crossover, crossover, 1.0 - crossover});
}

WiretapChannel WiretapChannel::erasure(std::size_t inputs, double erasure_probability) {
    if (!(erasure_probability >= 0.0 && erasure_probability <= 1.0))
        throw std::invalid_argument("erasure probability must lie in [0,1]");
    std::vector<double> m(inputs * (inputs + 1), 0.0);
    for (std::size_t v = 0; v < inputs; ++v) {
        m[v * (inputs + 1) + v] = 1.0 - erasure_probability;
        m[v * (inputs + 1) + inputs] = erasure_probability;
    }
    return WiretapChannel(inputs, inputs + 1, std::move(m));
}

WiretapChannel WiretapChannel::identity(std::size_t inputs) {
    std::vector<double> m(inputs * inputs, 0.0);
    for (std::size_t v = 0; v < inputs; ++v) m[v * inputs + v] = 1.0;
    return WiretapChannel(inputs, inputs, std::move(m));
}

WiretapChannel WiretapChannel::constant(std::size_t inputs) {
    return WiretapChannel(inputs, 1, std::vector<double>(inputs, 1.0));
}

std::vector<std::vector<double>> WiretapChannel::rows() const {
    std::vector<std::vector<double>> out;
    for (std::size_t v = 0; v < inputs_; ++v) out.emplace_back(row(v).begin(), row(v).end());
    return out;
}

EdgeSource::EdgeSource(std::vector<double> value_distribution, WiretapChannel channel)
    : distribution_(std::move(value_distribution)), channel_(std::move(channel)) {
    if (distribution_.size() < 2) throw std::invalid_argument("source alphabet needs at least two symbols");
    check_distribution(distribution_, "value distribution");
    if (channel_.input_alphabet().size != distribution_.size())
        throw std::invalid_argument("channel input alphabet does not match the source alphabet");
}

EdgeSource EdgeSource::uniform(std::size_t alphabet_size, WiretapChannel channel) {
    return EdgeSource(std::vector<double>(alphabet_size, 1.0 / static_cast<double>(alphabet_size)),
                      std::move(channel));
}

double entropy(std::span<const double> distribution) {
    double h = 0.0;
    for (double p : distribution)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

double conditional_entropy(const EdgeSource& source) {
    const std::size_t nv = source.value_alphabet().size;
    const std::size_t nz = source.observation_alphabet().size;
    double h_joint = 0.0;
    std::vector<double> pz(nz, 0.0);
    for (std::size_t v = 0; v < nv; ++v) {
        for (std::size_t z = 0; z < nz; ++z) {
            const double p = source.joint(v, z);
            pz[z] += p;
            if (p > 0.0) h_joint -= p * std::log2(p);
        }
    }
    const double h = h_joint - entropy(pz);
    // Clamp rounding noise into the valid range [0, log2 |V|].
    return std::clamp(h, 0.0, std::log2(static_cast<double>(nv)));
}

std::size_t bits_per_symbol(Alphabet alphabet) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < alphabet.size) ++bits;
    return bits;
}

}  // namespace treepin
