#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace treepin {

/// Finite alphabet {0, ..., size-1}.
struct Alphabet {
    std::size_t size = 0;

    auto operator<=>(const Alphabet&) const = default;
};

inline constexpr double kProbabilityTolerance = 1e-12;

/// Row-stochastic matrix P(Z = z | V = v): rows are inputs, columns outputs.
class WiretapChannel {
public:
    WiretapChannel(std::size_t inputs, std::size_t outputs, std::vector<double> row_major);

    static WiretapChannel from_rows(const std::vector<std::vector<double>>& rows);
    /// Binary symmetric channel with the given crossover probability.
    static WiretapChannel binary_symmetric(double crossover);
    /// q-ary erasure channel; the erasure symbol is the last output, index q.
    static WiretapChannel erasure(std::size_t inputs, double erasure_probability);
    static WiretapChannel identity(std::size_t inputs);
    /// Output independent of the input: one column, all mass on it.
    static WiretapChannel constant(std::size_t inputs);

    Alphabet input_alphabet() const { return {inputs_}; }
    Alphabet output_alphabet() const { return {outputs_}; }
    double operator()(std::size_t v, std::size_t z) const { return matrix_[v * outputs_ + z]; }
    std::span<const double> row(std::size_t v) const { return {matrix_.data() + v * outputs_, outputs_}; }
    std::vector<std::vector<double>> rows() const;

    bool operator==(const WiretapChannel&) const = default;

private:
    std::size_t inputs_;
    std::size_t outputs_;
    std::vector<double> matrix_;
};

/// The shared variable V_ij of one tree edge together with the wiretapper's
/// channel to Z_ij. Both endpoints observe the same realization.
class EdgeSource {
public:
    EdgeSource(std::vector<double> value_distribution, WiretapChannel channel);

    static EdgeSource uniform(std::size_t alphabet_size, WiretapChannel channel);

    Alphabet value_alphabet() const { return {distribution_.size()}; }
    Alphabet observation_alphabet() const { return channel_.output_alphabet(); }
    std::span<const double> distribution() const { return distribution_; }
    const WiretapChannel& channel() const { return channel_; }

    /// Probability of (V = v, Z = z).
    double joint(std::size_t v, std::size_t z) const { return distribution_[v] * channel_(v, z); }

    bool operator==(const EdgeSource&) const = default;

private:
    std::vector<double> distribution_;
    WiretapChannel channel_;
};

/// Shannon entropy in bits, 0 log 0 = 0.
double entropy(std::span<const double> distribution);

/// H(V | Z) in bits computed from the joint table as H(V,Z) - H(Z).
double conditional_entropy(const EdgeSource& source);

/// Bits needed per symbol when encoding an alphabet in fixed width.
std::size_t bits_per_symbol(Alphabet alphabet);

}  // namespace treepin
