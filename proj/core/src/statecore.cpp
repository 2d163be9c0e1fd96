#include "qec/statecore.hpp"

#include <cmath>
#include <stdexcept>

namespace qec {

namespace {

void check_level(int level) {
    if (level != 0 && level != 1) {
        throw std::invalid_argument("level must be 0 or 1");
    }
}

}  // namespace

BitString::BitString(int n_bits, std::uint32_t value) : n_(n_bits), value_(value) {
    if (n_bits < 1 || n_bits > 30) {
        throw std::invalid_argument("bit string length out of range");
    }
    if (value >> n_bits) {
        throw std::invalid_argument("bit string value exceeds length");
    }
}

BitString BitString::parse(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("empty bit string");
    }
    std::uint32_t value = 0;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit string must contain only 0 and 1");
        }
        value = (value << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return BitString(static_cast<int>(text.size()), value);
}

int BitString::bit(int position) const {
    if (position < 1 || position > n_) {
        throw std::out_of_range("bit position out of range");
    }
    return static_cast<int>((value_ >> (n_ - position)) & 1u);
}

std::string BitString::str() const {
    std::string out(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i) {
        if ((value_ >> (n_ - 1 - i)) & 1u) out[static_cast<std::size_t>(i)] = '1';
    }
    return out;
}

std::vector<BitString> all_labels(int n_qubits) {
    std::vector<BitString> labels;
    labels.reserve(std::size_t{1} << n_qubits);
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << n_qubits); ++v) {
        labels.emplace_back(n_qubits, v);
    }
    return labels;
}

StaticState::StaticState(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw std::invalid_argument("n_qubits out of range");
    }
    if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude count must be 2^n");
    }
    for (const Complex& a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("amplitudes must be finite");
        }
    }
}

StaticState StaticState::basis(const BitString& b) {
    std::vector<Complex> amps(std::size_t{1} << b.size());
    amps[b.value()] = Complex(1.0, 0.0);
    return StaticState(b.size(), std::move(amps));
}

double StaticState::norm_sq() const {
    double total = 0.0;
    for (const Complex& a : amplitudes_) total += std::norm(a);
    return total;
}

bool StaticState::is_normalized(double tol) const {
    return std::abs(norm_sq() - 1.0) <= tol;
}

DynamicQubit::DynamicQubit(int qubit_index, std::vector<Tone> tones0, std::vector<Tone> tones1)
    : qubit_index_(qubit_index) {
    if (qubit_index < 1) {
        throw std::invalid_argument("qubit_index must be >= 1");
    }
    std::vector<Tone>* in[2] = {&tones0, &tones1};
    for (int level = 0; level < 2; ++level) {
        for (Tone& tone : *in[level]) {
            if (!std::isfinite(tone.amplitude.real()) || !std::isfinite(tone.amplitude.imag())) {
                throw std::invalid_argument("tone amplitude must be finite");
            }
            if (std::abs(tone.amplitude) == 0.0) continue;  // dropped, never stored
            for (const Tone& kept : tones_[level]) {
                if (kept.freq_index == tone.freq_index) {
                    throw std::invalid_argument("duplicate frequency index within a level");
                }
            }
            tones_[level].push_back(std::move(tone));
        }
    }
}

const std::vector<Tone>& DynamicQubit::tones(int level) const {
    check_level(level);
    return tones_[level];
}

Complex DynamicQubit::coefficient(int level, double omega_base, double t) const {
    check_level(level);
    Complex sum(0.0, 0.0);
    for (const Tone& tone : tones_[level]) {
        sum += tone.amplitude * std::polar(1.0, static_cast<double>(tone.freq_index) * omega_base * t);
    }
    return sum;
}

DynamicComposite::DynamicComposite(std::vector<DynamicQubit> qubits, double base_frequency)
    : qubits_(std::move(qubits)), base_frequency_(base_frequency) {
    if (qubits_.empty()) {
        throw std::invalid_argument("no subsystems");
    }
    if (!(base_frequency > 0.0) || !std::isfinite(base_frequency)) {
        throw std::invalid_argument("base frequency must be positive and finite");
    }
    const int n = static_cast<int>(qubits_.size());
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const DynamicQubit& q : qubits_) {
        const int idx = q.qubit_index();
        if (idx < 1 || idx > n || seen[static_cast<std::size_t>(idx - 1)]) {
            throw std::invalid_argument("qubit indices must cover 1..N exactly once");
        }
        seen[static_cast<std::size_t>(idx - 1)] = true;
        for (int level = 0; level < 2; ++level) {
            for (const Tone& tone : q.tones(level)) {
                if (tone.label.size() != n) {
                    throw std::invalid_argument("tone label length must equal N");
                }
            }
        }
    }
}

double DynamicComposite::period() const {
    return 2.0 * M_PI / base_frequency_;
}

const DynamicQubit& DynamicComposite::qubit(int index) const {
    for (const DynamicQubit& q : qubits_) {
        if (q.qubit_index() == index) return q;
    }
    throw std::out_of_range("qubit index out of range");
}

StaticState tensor_product_static(std::span<const StaticState> parts) {
    if (parts.empty()) {
        throw std::invalid_argument("no subsystems");
    }
    const int n = static_cast<int>(parts.size());
    for (const StaticState& p : parts) {
        if (p.n_qubits() != 1) {
            throw std::invalid_argument("tensor_product_static expects single-qubit factors");
        }
    }
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Complex> amps(dim);
    for (std::size_t index = 0; index < dim; ++index) {
        Complex product(1.0, 0.0);
        for (int q = 1; q <= n; ++q) {
            const std::size_t bit = (index >> (n - q)) & 1u;
            product *= parts[static_cast<std::size_t>(q - 1)][bit];
        }
        amps[index] = product;
    }
    return StaticState(n, std::move(amps));
}

std::vector<Complex> evaluate(const DynamicComposite& composite, double t) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("time must be finite");
    }
    const int n = composite.n_qubits();
    const double omega = composite.base_frequency();

    // Per-qubit level coefficients once, then 2^N products.
    std::vector<Complex> coeff(static_cast<std::size_t>(n) * 2);
    for (int q = 1; q <= n; ++q) {
        const DynamicQubit& dq = composite.qubit(q);
        coeff[static_cast<std::size_t>(q - 1) * 2 + 0] = dq.coefficient(0, omega, t);
        coeff[static_cast<std::size_t>(q - 1) * 2 + 1] = dq.coefficient(1, omega, t);
    }

    const std::size_t dim = std::size_t{1} << n;
    std::vector<Complex> amps(dim);
    for (std::size_t index = 0; index < dim; ++index) {
        Complex product(1.0, 0.0);
        for (int q = 1; q <= n; ++q) {
            const std::size_t bit = (index >> (n - q)) & 1u;
            product *= coeff[static_cast<std::size_t>(q - 1) * 2 + bit];
        }
        amps[index] = product;
    }
    return amps;
}

Complex inner_product(const StaticState& a, const StaticState& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("dimension mismatch");
    }
    Complex sum(0.0, 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        sum += std::conj(a[i]) * b[i];
    }
    return sum;
}

double fidelity(const StaticState& a, const StaticState& b) {
    return std::norm(inner_product(a, b));
}

}  // namespace qec
