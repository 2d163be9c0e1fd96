// Core value types for static N-qubit states and their dynamic multi-tone
// counterparts, plus evaluation and elementary linear-algebra utilities.

#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qec {

using Complex = std::complex<double>;

/// Ordered binary label b1..bN. b1 is the most significant bit of the
/// canonical integer encoding, so "10" has value 2 and indexes |10>.
class BitString {
public:
    BitString() = default;
    BitString(int n_bits, std::uint32_t value);

    /// Parses a label like "0110" (throws std::invalid_argument otherwise).
    static BitString parse(std::string_view text);

    int size() const { return n_; }
    std::uint32_t value() const { return value_; }

    /// Bit of subsystem `position`, 1-based; position 1 is b1.
    int bit(int position) const;

    std::string str() const;

    friend auto operator<=>(const BitString&, const BitString&) = default;

private:
    int n_ = 0;
    std::uint32_t value_ = 0;
};

/// All 2^n labels in canonical order.
std::vector<BitString> all_labels(int n_qubits);

/// Constant-amplitude N-qubit state: 2^N complex amplitudes in canonical
/// bit order. Immutable after construction.
class StaticState {
public:
    StaticState(int n_qubits, std::vector<Complex> amplitudes);

    /// Basis state |b> with a single unit amplitude.
    static StaticState basis(const BitString& b);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    const Complex& operator[](std::size_t index) const { return amplitudes_[index]; }
    const Complex& at(const BitString& b) const { return amplitudes_[b.value()]; }

    double norm_sq() const;
    bool is_normalized(double tol = 1e-12) const;

private:
    int n_qubits_;
    std::vector<Complex> amplitudes_;
};

/// One term amplitude * e^{i * freq_index * omega_base * t} of a dynamic
/// coefficient. `label` records which target label produced the tone.
struct Tone {
    Complex amplitude;
    std::int64_t freq_index = 0;
    BitString label;
};

/// Two tone lists (levels |0> and |1>) for one subsystem. Zero-amplitude
/// tones are dropped at construction; frequency indices must be pairwise
/// distinct within each level.
class DynamicQubit {
public:
    DynamicQubit(int qubit_index, std::vector<Tone> tones0, std::vector<Tone> tones1);

    int qubit_index() const { return qubit_index_; }
    const std::vector<Tone>& tones(int level) const;

    /// Dynamic coefficient of `level` at time t: sum of the level's tones.
    Complex coefficient(int level, double omega_base, double t) const;

private:
    int qubit_index_;
    std::vector<Tone> tones_[2];
};

/// Ordered list of N dynamic qubits over a common base frequency. Every
/// tone frequency is an integer multiple of base_frequency, so the tensor
/// product is exactly periodic with period 2*pi/base_frequency.
class DynamicComposite {
public:
    DynamicComposite(std::vector<DynamicQubit> qubits, double base_frequency);

    int n_qubits() const { return static_cast<int>(qubits_.size()); }
    double base_frequency() const { return base_frequency_; }
    double period() const;
    const std::vector<DynamicQubit>& qubits() const { return qubits_; }

    /// Qubit by 1-based index.
    const DynamicQubit& qubit(int index) const;

private:
    std::vector<DynamicQubit> qubits_;
    double base_frequency_;
};

/// Product state of single-qubit factors: alpha_b = prod_n parts[n][b_n].
StaticState tensor_product_static(std::span<const StaticState> parts);

/// Amplitudes alpha_b(t) = prod_n alpha^(n)_{b_n}(t) of the composite at
/// time t, in canonical order.
std::vector<Complex> evaluate(const DynamicComposite& composite, double t);

/// <a|b>. Throws on dimension mismatch.
Complex inner_product(const StaticState& a, const StaticState& b);

/// |<a|b>|^2. Callers are expected to pass normalized states.
double fidelity(const StaticState& a, const StaticState& b);

}  // namespace qec
