#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bell.hpp"
#include "decoder.hpp"
#include "frames.hpp"

namespace dacos {

// Thrown when an input exceeds an enumeration or memory cap.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoiseModel {
    double p = 0.0;  // input isotropic noise
    double q = 0.0;  // gate depolarizing strength
    void validate() const {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise p outside [0, 1]");
        if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("noise q outside [0, 1]");
    }
};

struct SimResult {
    std::size_t k = 0;
    double p_success = 0.0;
    double fidelity_joint = 0.0;
    std::vector<double> fidelity_reduced;
    std::vector<std::array<double, 3>> correlators;  // (XX, YY, ZZ) per pair
    BellClassDist dist;                              // conditioned on success
    bool exact = true;
    std::uint64_t shots = 0;
    // Monte Carlo standard errors (zero in exact mode).
    double stderr_p_success = 0.0;
    double stderr_fidelity_joint = 0.0;
    std::vector<double> stderr_fidelity_reduced;
    std::vector<std::array<double, 3>> stderr_correlators;
};

// A decoder makes the protocol one-way (always succeeds); without one it is two-way
// (post-select on the all-zero syndrome). Distance-2 codes only detect, so a decoder is rejected.
inline void validate_protocol(std::size_t distance, const std::optional<DecoderTable>& decoder) {
    if (decoder && distance <= 2)
        throw std::invalid_argument("distance-2 codes run as two-way protocols; no decoder may be given");
}

// Default worker count: DACOS_THREADS if set, otherwise the hardware concurrency.
inline unsigned default_threads() {
    if (const char* env = std::getenv("DACOS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : h;
}

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// SplitMix64 stream keyed by (seed, shot), so every shot is reproducible on its own.
class ShotRng {
public:
    ShotRng(std::uint64_t seed, std::uint64_t shot) : state_(mix64(seed) ^ mix64(~shot)) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

struct Corrections {
    std::vector<Frame> dense;  // (x, z) bits of the correction on V_L, indexed by syndrome
    const DecoderTable* table = nullptr;

    Frame at(std::uint64_t s) const {
        if (!dense.empty()) return dense[s];
        return pack_correction(table->lookup(s));
    }
    static Frame pack_correction(const PauliString& c) { return FrameModel::pack(c); }
};

inline Corrections make_corrections(const CompiledCircuit& c, const std::optional<DecoderTable>& d) {
    Corrections out;
    if (!d) return out;
    if (d->k != c.k || d->r_s != c.r()) throw std::invalid_argument("decoder does not match circuit shape");
    out.table = &*d;
    if (c.r() <= 20) {
        out.dense.assign(std::size_t{1} << c.r(), Frame{});
        for (const auto& [s, corr] : d->entries) {
            if (s >= out.dense.size()) throw std::invalid_argument("decoder syndrome out of range");
            out.dense[s] = Corrections::pack_correction(corr);
        }
    }
    return out;
}

inline void check_sim_shape(const CompiledCircuit& c) {
    if (c.n > 64) throw CapExceeded("simulation supports at most 64 qubits");
    if (c.k > 10) throw CapExceeded("simulation keeps at most 10 pairs (4^k class table)");
}

// Fill every derived field from success-conditioned class probabilities.
inline void finish(SimResult& res, std::vector<double> cls, double p_success) {
    res.p_success = p_success;
    res.dist.k = res.k;
    if (p_success > 0.0)
        for (auto& v : cls) v /= p_success;
    res.dist.probs = std::move(cls);
    res.fidelity_joint = res.dist.probs.empty() ? 0.0 : res.dist.probs[0];
    res.fidelity_reduced.clear();
    res.correlators.clear();
    for (std::size_t j = 0; j < res.k; ++j) {
        const BellDiag m = res.dist.marginal(j);
        res.fidelity_reduced.push_back(m.p[0]);
        res.correlators.push_back(correlators(m));
    }
}

// Distribution over read-out keys (syndrome | logical x | logical z), updated by XOR-convolution.
class KeyDistribution {
public:
    explicit KeyDistribution(const FrameModel& fm) : fm_(fm), bits_(fm.r() + 2 * fm.k()) {
        if (bits_ > 26) throw CapExceeded("exact simulation needs r + 2k <= 26");
        probs_.assign(std::size_t{1} << bits_, 0.0);
        probs_[0] = 1.0;
        scratch_.resize(probs_.size());
    }

    std::uint64_t key(const Frame& f) const {
        return fm_.syndrome(f) | (fm_.logical_x(f) << fm_.r()) | (fm_.logical_z(f) << (fm_.r() + fm_.k()));
    }

    // Mix in an independent random shift taking value keys[i] with probability w[i].
    void convolve(const std::vector<std::uint64_t>& keys, const std::vector<double>& w) {
        std::fill(scratch_.begin(), scratch_.end(), 0.0);
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (w[i] == 0.0) continue;
            for (std::size_t s = 0; s < probs_.size(); ++s) scratch_[s ^ keys[i]] += w[i] * probs_[s];
        }
        probs_.swap(scratch_);
    }

    const std::vector<double>& probs() const noexcept { return probs_; }

private:
    const FrameModel& fm_;
    std::size_t bits_;
    std::vector<double> probs_, scratch_;
};

inline SimResult read_out(const CompiledCircuit& c, const KeyDistribution& kd,
                          const std::optional<DecoderTable>& decoder) {
    const Corrections corr = make_corrections(c, decoder);
    const std::size_t r = c.r(), k = c.k;
    const std::uint64_t smask = (std::uint64_t{1} << r) - 1, kmask = (std::uint64_t{1} << k) - 1;
    std::vector<double> cls(std::size_t{1} << (2 * k), 0.0);
    double ps = 0.0;
    const auto& probs = kd.probs();
    for (std::uint64_t key = 0; key < probs.size(); ++key) {
        const double pr = probs[key];
        if (pr == 0.0) continue;
        const std::uint64_t s = key & smask;
        std::uint64_t lx = (key >> r) & kmask, lz = (key >> (r + k)) & kmask;
        if (decoder) {
            const Frame f = corr.at(s);
            lx ^= f.x;
            lz ^= f.z;
        } else if (s != 0) {
            continue;
        }
        ps += pr;
        cls[FrameModel::class_index(lx, lz, k)] += pr;
    }
    SimResult res;
    res.k = k;
    res.exact = true;
    // One-way runs keep every shot; the summed weights differ from 1 only by rounding.
    finish(res, std::move(cls), ps);
    if (decoder) res.p_success = 1.0;
    return res;
}

inline void add_input_noise(const FrameModel& fm, KeyDistribution& kd, double p) {
    if (p == 0.0) return;
    const std::vector<double> w{1.0 - 0.75 * p, p / 4, p / 4, p / 4};
    for (std::size_t q = 0; q < fm.n(); ++q) {
        std::vector<std::uint64_t> keys;
        for (unsigned e = 0; e < 4; ++e) keys.push_back(kd.key(fm.input_image(q, e)));
        kd.convolve(keys, w);
    }
}

}  // namespace detail

// Exact output for input noise only, summing over all 4^n one-sided error patterns.
inline SimResult simulate_exact(const CompiledCircuit& c, const std::optional<DecoderTable>& decoder, double p,
                                std::size_t max_n = 10) {
    NoiseModel{p, 0.0}.validate();
    detail::check_sim_shape(c);
    if (c.n > max_n) throw CapExceeded("exact simulation: n = " + std::to_string(c.n) + " exceeds cap " +
                                       std::to_string(max_n));
    const FrameModel fm(c);
    detail::KeyDistribution kd(fm);
    detail::add_input_noise(fm, kd, p);
    return detail::read_out(c, kd, decoder);
}

// Exact output including gate noise. Alice's and Bob's gate errors at a location combine into one
// depolarizing event of strength 1 - (1 - q)^2 on the relative frame.
inline SimResult simulate_exact_noisy(const CompiledCircuit& c, const std::optional<DecoderTable>& decoder,
                                      const NoiseModel& noise, std::size_t max_n = 10) {
    noise.validate();
    detail::check_sim_shape(c);
    if (c.n > max_n) throw CapExceeded("exact simulation: n exceeds cap");
    const FrameModel fm(c);
    detail::KeyDistribution kd(fm);
    detail::add_input_noise(fm, kd, noise.p);
    const double qq = 1.0 - (1.0 - noise.q) * (1.0 - noise.q);
    if (qq > 0.0) {
        for (const auto& loc : fm.locations()) {
            std::vector<std::uint64_t> keys;
            std::vector<double> w;
            if (loc.two_qubit()) {
                for (unsigned e = 0; e < 16; ++e) {
                    keys.push_back(kd.key(fm.location_image(loc, e / 4, e % 4)));
                    w.push_back(e == 0 ? 1.0 - 15.0 * qq / 16.0 : qq / 16.0);
                }
            } else {
                for (unsigned e = 0; e < 4; ++e) {
                    keys.push_back(kd.key(fm.location_image(loc, e)));
                    w.push_back(e == 0 ? 1.0 - 0.75 * qq : qq / 4.0);
                }
            }
            kd.convolve(keys, w);
        }
    }
    return detail::read_out(c, kd, decoder);
}

// Pauli-frame Monte Carlo. Input errors sit on one side of each pair; gate errors are drawn
// independently for both sides. Output is identical for any thread count.
inline SimResult simulate_mc(const CompiledCircuit& c, const std::optional<DecoderTable>& decoder,
                             const NoiseModel& noise, std::uint64_t shots, std::uint64_t seed, unsigned threads = 0) {
    noise.validate();
    if (shots == 0) throw std::invalid_argument("simulate_mc: shots must be positive");
    detail::check_sim_shape(c);
    const FrameModel fm(c);
    const detail::Corrections corr = detail::make_corrections(c, decoder);
    const std::size_t k = c.k;
    const std::size_t classes = std::size_t{1} << (2 * k);
    const double p = noise.p, q = noise.q;

    struct Tally {
        std::vector<std::uint64_t> cls;
        std::uint64_t success = 0;
    };
    auto run = [&](std::uint64_t begin, std::uint64_t end, Tally& t) {
        t.cls.assign(classes, 0);
        for (std::uint64_t shot = begin; shot < end; ++shot) {
            detail::ShotRng rng(seed, shot);
            Frame f;
            for (std::size_t qb = 0; qb < fm.n(); ++qb) {
                const double u = rng.uniform();
                if (u < 0.75 * p) f ^= fm.input_image(qb, 1 + std::min(2U, static_cast<unsigned>(u / (p / 4))));
            }
            if (q > 0.0) {
                for (int side = 0; side < 2; ++side) {
                    for (const auto& loc : fm.locations()) {
                        const double u = rng.uniform();
                        if (loc.two_qubit()) {
                            if (u < 15.0 * q / 16.0) {
                                const unsigned e = 1 + std::min(14U, static_cast<unsigned>(u / (q / 16.0)));
                                f ^= fm.location_image(loc, e / 4, e % 4);
                            }
                        } else if (u < 0.75 * q) {
                            f ^= fm.location_image(loc, 1 + std::min(2U, static_cast<unsigned>(u / (q / 4.0))));
                        }
                    }
                }
            }
            const std::uint64_t s = fm.syndrome(f);
            std::uint64_t lx = fm.logical_x(f), lz = fm.logical_z(f);
            if (decoder) {
                const Frame cf = corr.at(s);
                lx ^= cf.x;
                lz ^= cf.z;
            } else if (s != 0) {
                continue;
            }
            ++t.success;
            ++t.cls[FrameModel::class_index(lx, lz, k)];
        }
    };

    unsigned nt = threads == 0 ? default_threads() : threads;
    nt = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(nt, shots)));
    std::vector<Tally> tallies(nt);
    if (nt == 1) {
        run(0, shots, tallies[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nt; ++i) {
            const std::uint64_t b = shots * i / nt, e = shots * (i + 1) / nt;
            pool.emplace_back(run, b, e, std::ref(tallies[i]));
        }
        for (auto& th : pool) th.join();
    }
    Tally total;
    total.cls.assign(classes, 0);
    for (const auto& t : tallies) {
        total.success += t.success;
        for (std::size_t i = 0; i < classes; ++i) total.cls[i] += t.cls[i];
    }

    SimResult res;
    res.k = k;
    res.exact = false;
    res.shots = shots;
    const double ns = static_cast<double>(shots);
    const double succ = static_cast<double>(total.success);
    std::vector<double> cls(classes);
    for (std::size_t i = 0; i < classes; ++i) cls[i] = static_cast<double>(total.cls[i]) / ns;
    detail::finish(res, std::move(cls), succ / ns);

    auto se_binomial = [](double f, double m) { return m > 0 ? std::sqrt(std::max(0.0, f * (1 - f)) / m) : 0.0; };
    res.stderr_p_success = se_binomial(res.p_success, ns);
    res.stderr_fidelity_joint = se_binomial(res.fidelity_joint, succ);
    for (std::size_t j = 0; j < k; ++j) {
        res.stderr_fidelity_reduced.push_back(se_binomial(res.fidelity_reduced[j], succ));
        std::array<double, 3> se{};
        for (std::size_t a = 0; a < 3; ++a) {
            const double cval = res.correlators[j][a];
            se[a] = succ > 0 ? std::sqrt(std::max(0.0, 1.0 - cval * cval) / succ) : 0.0;
        }
        res.stderr_correlators.push_back(se);
    }
    return res;
}

}  // namespace dacos
