// Synthesis of dynamic composites that time-average back to a target state:
// per-channel amplitude assignment, random collision-free frequency
// assignment with last-qubit retuning, the Bell and W presets, and the
// resonance collision scan.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qec/statecore.hpp"

namespace qec {

/// Addresses one channel: (qubit n, level bit, label u).
struct ToneKey {
    int qubit = 0;
    int level = 0;
    BitString label;

    friend auto operator<=>(const ToneKey&, const ToneKey&) = default;
};

/// Map (qubit, level, label) -> integer frequency index. Assignments
/// produced by assign_frequencies satisfy the retuning identity
/// sum_n entries(n, u_n, u) = 0 for every support label u, and pass
/// collision_scan with no violations; imported assignments should be
/// re-checked with collision_scan.
class FrequencyAssignment {
public:
    explicit FrequencyAssignment(int n_qubits);

    int n_qubits() const { return n_qubits_; }

    void set(const ToneKey& key, std::int64_t freq_index);
    std::optional<std::int64_t> find(const ToneKey& key) const;
    std::int64_t at(const ToneKey& key) const;

    /// Labels present for (qubit, level), canonical order.
    std::vector<BitString> labels(int qubit, int level) const;

    const std::map<ToneKey, std::int64_t>& entries() const { return entries_; }

private:
    int n_qubits_;
    std::map<ToneKey, std::int64_t> entries_;
};

struct SynthesisConfig {
    std::uint64_t seed = 0;
    std::int64_t freq_range = 0;  // K, draws from +-1..+-K; 0 selects 10*N*2^N
    int max_retries = 64;
    bool drop_zero_amplitudes = true;
};

/// Accidental resonance: a non-diagonal label tuple whose frequencies sum
/// to zero for target label `target`.
struct Violation {
    BitString target;
    std::vector<BitString> labels;
    std::int64_t total_freq_index = 0;
};

enum class ScanMode {
    exhaustive,      // |support|^N tuples per target label, N <= 5
    meet_in_middle,  // hash of half-tuple partial sums
};

struct SynthesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Support of a target state: labels with nonzero amplitude when
/// drop_zeros is set, else all of {0,1}^N.
std::vector<BitString> support_of(const StaticState& target, bool drop_zeros);

/// Principal n-th root: magnitude |value|^{1/n}, phase arg(value)/n with
/// arg in (-pi, pi]. Zero maps to zero.
Complex principal_root(Complex value, int n);

/// Per-channel amplitudes: every (qubit, level, label u) channel carries
/// the principal N-th root of alpha_u, so the diagonal resonance of each
/// label multiplies back to alpha_u exactly.
std::map<ToneKey, Complex> assign_amplitudes(const StaticState& target);

/// Draws integer frequencies for qubits 1..N-1 uniformly from +-1..+-K
/// (distinct within each (qubit, level) list), retunes qubit N so every
/// support label's diagonal sums to zero, and rejection-resamples until
/// the collision scan comes back empty. Deterministic for a fixed seed.
///
/// Throws SynthesisError once max_retries attempts are exhausted.
FrequencyAssignment assign_frequencies(int n_qubits, const SynthesisConfig& config,
                                       const std::vector<BitString>& support);

struct Synthesis {
    DynamicComposite composite;
    FrequencyAssignment assignment;
    std::vector<BitString> support;
};

/// Full synthesis: support selection, amplitude assignment, collision-free
/// frequency assignment, composite construction. The symbolic average of
/// the result equals the (normalized) target exactly.
Synthesis synthesize(const StaticState& target, const SynthesisConfig& config);

/// Enumerates label tuples per target label and reports every zero
/// frequency sum that is not the diagonal tuple (u,...,u) = (b,...,b).
/// Empty result <=> the assignment averages cleanly.
std::vector<Violation> collision_scan(const FrequencyAssignment& assignment,
                                      const std::vector<BitString>& support,
                                      ScanMode mode = ScanMode::exhaustive);

struct Preset {
    StaticState target;
    DynamicComposite composite;
};

/// (|00> + |11>)/sqrt(2) with the four-tone construction: qubit 1 carries
/// e^{+i k Omega t} at k0=1 (level 0) and k1=3 (level 1), qubit 2 the
/// complex conjugates.
Preset preset_bell();

/// (|100> + |010> + |001>)/sqrt(3) as a six-tone table: qubit 1 levels at
/// k = (-1, -2), qubits 2 and 3 levels at k = (+1, 0), all amplitudes
/// 3^{-1/6} so the time average is the normalized target.
Preset preset_w();

}  // namespace qec
