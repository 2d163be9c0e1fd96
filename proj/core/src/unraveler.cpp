#include "qec/unraveler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <unordered_map>

namespace qec {

namespace {

constexpr double kBaseFrequency = 2.0 * std::numbers::pi_v<double>;  // period 1 s

std::vector<BitString> canonical_support(int n_qubits, std::vector<BitString> support) {
    if (support.empty()) {
        throw std::invalid_argument("support must be non-empty");
    }
    for (const BitString& u : support) {
        if (u.size() != n_qubits) {
            throw std::invalid_argument("support label length must equal N");
        }
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    return support;
}

std::int64_t default_freq_range(int n_qubits) {
    return 10 * static_cast<std::int64_t>(n_qubits) * (std::int64_t{1} << n_qubits);
}

// Unbiased draw from [0, n) on a fixed 64-bit stream.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t rem = (max % n + 1) % n;  // 2^64 mod n
    std::uint64_t x = rng();
    while (rem != 0 && x >= max - rem + 1) x = rng();
    return x % n;
}

// Candidate i in [0, 2K) -> value in {-K..-1, 1..K}.
std::int64_t candidate_value(std::uint64_t i, std::int64_t range) {
    const std::int64_t v = static_cast<std::int64_t>(i) - range;
    return v < 0 ? v : v + 1;
}

// Draws `count` distinct values from +-1..+-K, none already in `used`.
// Returns nothing when the candidate pool is too small or exhausted.
std::optional<std::vector<std::int64_t>> draw_distinct(std::mt19937_64& rng, std::int64_t range,
                                                       std::size_t count,
                                                       std::set<std::int64_t>& used) {
    const std::uint64_t pool_size = 2 * static_cast<std::uint64_t>(range);
    std::size_t used_in_pool = 0;
    for (std::int64_t v : used) {
        if (v != 0 && std::abs(v) <= range) ++used_in_pool;
    }
    if (count > pool_size - used_in_pool) return std::nullopt;

    std::vector<std::int64_t> out;
    out.reserve(count);
    if (pool_size <= 4096) {
        std::vector<std::int64_t> pool;
        pool.reserve(pool_size);
        for (std::uint64_t i = 0; i < pool_size; ++i) {
            const std::int64_t v = candidate_value(i, range);
            if (!used.count(v)) pool.push_back(v);
        }
        for (std::size_t j = 0; j < count; ++j) {
            const std::size_t pick = j + uniform_below(rng, pool.size() - j);
            std::swap(pool[j], pool[pick]);
            out.push_back(pool[j]);
            used.insert(pool[j]);
        }
    } else {
        std::size_t guard = 0;
        while (out.size() < count) {
            if (++guard > 100 * count + 1000) return std::nullopt;
            const std::int64_t v = candidate_value(uniform_below(rng, pool_size), range);
            if (used.insert(v).second) out.push_back(v);
        }
    }
    return out;
}

std::optional<FrequencyAssignment> attempt_assignment(int n_qubits, std::int64_t range,
                                                      const std::vector<BitString>& support,
                                                      std::mt19937_64& rng) {
    FrequencyAssignment fa(n_qubits);
    for (int q = 1; q < n_qubits; ++q) {
        for (int level = 0; level < 2; ++level) {
            std::set<std::int64_t> used;
            auto values = draw_distinct(rng, range, support.size(), used);
            if (!values) return std::nullopt;
            for (std::size_t i = 0; i < support.size(); ++i) {
                fa.set({q, level, support[i]}, (*values)[i]);
            }
        }
    }

    // Last qubit: the level matching u_N is the negated partial sum, the
    // other level stays a fresh draw. Both lists must stay duplicate-free.
    std::set<std::int64_t> used[2];
    for (const BitString& u : support) {
        std::int64_t partial = 0;
        for (int q = 1; q < n_qubits; ++q) {
            partial += fa.at({q, u.bit(q), u});
        }
        const int level = u.bit(n_qubits);
        const std::int64_t retuned = -partial;
        if (!used[level].insert(retuned).second) return std::nullopt;
        fa.set({n_qubits, level, u}, retuned);
    }
    for (int level = 0; level < 2; ++level) {
        std::vector<BitString> cross;
        for (const BitString& u : support) {
            if (u.bit(n_qubits) != level) cross.push_back(u);
        }
        auto values = draw_distinct(rng, range, cross.size(), used[level]);
        if (!values) return std::nullopt;
        for (std::size_t i = 0; i < cross.size(); ++i) {
            fa.set({n_qubits, level, cross[i]}, (*values)[i]);
        }
    }
    return fa;
}

void scan_exhaustive(const BitString& target, const std::vector<std::vector<BitString>>& cand,
                     const std::vector<std::vector<std::int64_t>>& freq,
                     std::vector<Violation>& out) {
    const int n = static_cast<int>(cand.size());
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);

    // DFS over label tuples with a running sum.
    const auto descend = [&](auto&& self, int q, std::int64_t sum, bool diagonal) -> void {
        if (q == n) {
            if (sum == 0 && !diagonal) {
                Violation v;
                v.target = target;
                v.total_freq_index = 0;
                v.labels.reserve(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) v.labels.push_back(cand[i][pick[i]]);
                out.push_back(std::move(v));
            }
            return;
        }
        const auto& labels = cand[static_cast<std::size_t>(q)];
        const auto& ks = freq[static_cast<std::size_t>(q)];
        for (std::size_t i = 0; i < labels.size(); ++i) {
            pick[static_cast<std::size_t>(q)] = i;
            self(self, q + 1, sum + ks[i], diagonal && labels[i] == target);
        }
    };
    descend(descend, 0, 0, true);
}

void scan_meet_in_middle(const BitString& target, const std::vector<std::vector<BitString>>& cand,
                         const std::vector<std::vector<std::int64_t>>& freq,
                         std::vector<Violation>& out) {
    const int n = static_cast<int>(cand.size());
    const int half = n / 2;

    using Tuple = std::vector<std::size_t>;
    std::unordered_map<std::int64_t, std::vector<Tuple>> left_sums;

    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    const auto enumerate = [&](auto&& self, int q, int stop, std::int64_t sum, auto&& emit) -> void {
        if (q == stop) {
            emit(sum);
            return;
        }
        const auto& ks = freq[static_cast<std::size_t>(q)];
        for (std::size_t i = 0; i < ks.size(); ++i) {
            pick[static_cast<std::size_t>(q)] = i;
            self(self, q + 1, stop, sum + ks[i], emit);
        }
    };

    enumerate(enumerate, 0, half, 0, [&](std::int64_t sum) {
        left_sums[sum].emplace_back(pick.begin(), pick.begin() + half);
    });
    enumerate(enumerate, half, n, 0, [&](std::int64_t sum) {
        const auto hit = left_sums.find(-sum);
        if (hit == left_sums.end()) return;
        for (const Tuple& left : hit->second) {
            bool diagonal = true;
            for (int q = 0; q < half && diagonal; ++q) {
                diagonal = cand[static_cast<std::size_t>(q)][left[static_cast<std::size_t>(q)]] == target;
            }
            for (int q = half; q < n && diagonal; ++q) {
                diagonal = cand[static_cast<std::size_t>(q)][pick[static_cast<std::size_t>(q)]] == target;
            }
            if (diagonal) continue;
            Violation v;
            v.target = target;
            v.total_freq_index = 0;
            v.labels.reserve(static_cast<std::size_t>(n));
            for (int q = 0; q < half; ++q) {
                v.labels.push_back(cand[static_cast<std::size_t>(q)][left[static_cast<std::size_t>(q)]]);
            }
            for (int q = half; q < n; ++q) {
                v.labels.push_back(cand[static_cast<std::size_t>(q)][pick[static_cast<std::size_t>(q)]]);
            }
            out.push_back(std::move(v));
        }
    });
}

}  // namespace

FrequencyAssignment::FrequencyAssignment(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw std::invalid_argument("n_qubits out of range");
    }
}

void FrequencyAssignment::set(const ToneKey& key, std::int64_t freq_index) {
    if (key.qubit < 1 || key.qubit > n_qubits_) {
        throw std::invalid_argument("tone key qubit out of range");
    }
    if (key.level != 0 && key.level != 1) {
        throw std::invalid_argument("tone key level must be 0 or 1");
    }
    if (key.label.size() != n_qubits_) {
        throw std::invalid_argument("tone key label length must equal N");
    }
    entries_[key] = freq_index;
}

std::optional<std::int64_t> FrequencyAssignment::find(const ToneKey& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::int64_t FrequencyAssignment::at(const ToneKey& key) const {
    const auto found = find(key);
    if (!found) {
        throw std::out_of_range("no frequency assigned to (" + std::to_string(key.qubit) + "," +
                                std::to_string(key.level) + "," + key.label.str() + ")");
    }
    return *found;
}

std::vector<BitString> FrequencyAssignment::labels(int qubit, int level) const {
    std::vector<BitString> out;
    for (const auto& [key, k] : entries_) {
        if (key.qubit == qubit && key.level == level) out.push_back(key.label);
    }
    return out;
}

std::vector<BitString> support_of(const StaticState& target, bool drop_zeros) {
    std::vector<BitString> support;
    for (std::uint32_t v = 0; v < target.dim(); ++v) {
        if (!drop_zeros || std::abs(target[v]) != 0.0) {
            support.emplace_back(target.n_qubits(), v);
        }
    }
    return support;
}

Complex principal_root(Complex value, int n) {
    if (n < 1) throw std::invalid_argument("root order must be >= 1");
    if (std::abs(value) == 0.0) return Complex(0.0, 0.0);
    const double magnitude = std::pow(std::abs(value), 1.0 / n);
    return std::polar(magnitude, std::arg(value) / n);
}

std::map<ToneKey, Complex> assign_amplitudes(const StaticState& target) {
    const int n = target.n_qubits();
    std::map<ToneKey, Complex> out;
    for (const BitString& u : all_labels(n)) {
        const Complex root = principal_root(target.at(u), n);
        for (int q = 1; q <= n; ++q) {
            out[{q, 0, u}] = root;
            out[{q, 1, u}] = root;
        }
    }
    return out;
}

FrequencyAssignment assign_frequencies(int n_qubits, const SynthesisConfig& config,
                                       const std::vector<BitString>& support) {
    if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
    if (config.max_retries < 1) throw std::invalid_argument("max_retries must be >= 1");
    const std::vector<BitString> labels = canonical_support(n_qubits, support);
    const std::int64_t range = config.freq_range > 0 ? config.freq_range : default_freq_range(n_qubits);

    const ScanMode mode = n_qubits <= 4 ? ScanMode::exhaustive : ScanMode::meet_in_middle;
    std::mt19937_64 rng(config.seed);
    for (int attempt = 0; attempt < config.max_retries; ++attempt) {
        auto fa = attempt_assignment(n_qubits, range, labels, rng);
        if (!fa) continue;
        if (collision_scan(*fa, labels, mode).empty()) return std::move(*fa);
    }
    throw SynthesisError("no collision-free assignment found; increase freq_range");
}

Synthesis synthesize(const StaticState& target, const SynthesisConfig& config) {
    if (!target.is_normalized(1e-9)) {
        throw std::invalid_argument("target state must be normalized");
    }
    const int n = target.n_qubits();
    const std::vector<BitString> support = support_of(target, config.drop_zero_amplitudes);
    FrequencyAssignment fa = assign_frequencies(n, config, support);

    std::vector<DynamicQubit> qubits;
    qubits.reserve(static_cast<std::size_t>(n));
    for (int q = 1; q <= n; ++q) {
        std::vector<Tone> tones[2];
        for (const BitString& u : support) {
            const Complex root = principal_root(target.at(u), n);
            for (int level = 0; level < 2; ++level) {
                tones[level].push_back(Tone{root, fa.at({q, level, u}), u});
            }
        }
        qubits.emplace_back(q, std::move(tones[0]), std::move(tones[1]));
    }
    return Synthesis{DynamicComposite(std::move(qubits), kBaseFrequency), std::move(fa), support};
}

std::vector<Violation> collision_scan(const FrequencyAssignment& assignment,
                                      const std::vector<BitString>& support, ScanMode mode) {
    const int n = assignment.n_qubits();
    const std::vector<BitString> labels = canonical_support(n, support);
    if (mode == ScanMode::exhaustive && n > 5) {
        throw std::invalid_argument(
            "exhaustive collision scan is limited to N <= 5; use meet-in-the-middle mode");
    }

    std::vector<Violation> out;
    for (const BitString& target : all_labels(n)) {
        std::vector<std::vector<BitString>> cand(static_cast<std::size_t>(n));
        std::vector<std::vector<std::int64_t>> freq(static_cast<std::size_t>(n));
        bool missing_level = false;
        for (int q = 1; q <= n && !missing_level; ++q) {
            for (const BitString& u : labels) {
                if (auto k = assignment.find({q, target.bit(q), u})) {
                    cand[static_cast<std::size_t>(q - 1)].push_back(u);
                    freq[static_cast<std::size_t>(q - 1)].push_back(*k);
                }
            }
            missing_level = cand[static_cast<std::size_t>(q - 1)].empty();
        }
        if (missing_level) continue;
        if (mode == ScanMode::exhaustive) {
            scan_exhaustive(target, cand, freq, out);
        } else {
            scan_meet_in_middle(target, cand, freq, out);
        }
    }
    std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
        if (a.target != b.target) return a.target < b.target;
        return a.labels < b.labels;
    });
    return out;
}

Preset preset_bell() {
    const double amp = std::pow(2.0, -0.25);
    const BitString l00 = BitString::parse("00");
    const BitString l11 = BitString::parse("11");

    std::vector<DynamicQubit> qubits;
    qubits.emplace_back(1, std::vector<Tone>{{amp, +1, l00}}, std::vector<Tone>{{amp, +3, l11}});
    qubits.emplace_back(2, std::vector<Tone>{{amp, -1, l00}}, std::vector<Tone>{{amp, -3, l11}});

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<Complex> amps(4);
    amps[l00.value()] = inv_sqrt2;
    amps[l11.value()] = inv_sqrt2;
    return Preset{StaticState(2, std::move(amps)), DynamicComposite(std::move(qubits), kBaseFrequency)};
}

Preset preset_w() {
    // Channel amplitude (1/sqrt(3))^{1/3}: the three surviving diagonal
    // products each multiply back to exactly 1/sqrt(3).
    const double amp = std::pow(3.0, -1.0 / 6.0);
    const BitString l100 = BitString::parse("100");
    const BitString l010 = BitString::parse("010");
    const BitString l001 = BitString::parse("001");

    std::vector<DynamicQubit> qubits;
    qubits.emplace_back(1, std::vector<Tone>{{amp, -1, l001}}, std::vector<Tone>{{amp, -2, l100}});
    qubits.emplace_back(2, std::vector<Tone>{{amp, +1, l001}}, std::vector<Tone>{{amp, 0, l010}});
    qubits.emplace_back(3, std::vector<Tone>{{amp, +1, l010}}, std::vector<Tone>{{amp, 0, l001}});

    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    std::vector<Complex> amps(8);
    amps[l100.value()] = inv_sqrt3;
    amps[l010.value()] = inv_sqrt3;
    amps[l001.value()] = inv_sqrt3;
    return Preset{StaticState(3, std::move(amps)), DynamicComposite(std::move(qubits), kBaseFrequency)};
}

}  // namespace qec
