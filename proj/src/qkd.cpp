#include "qsample/qkd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "qsample/entropy.hpp"
#include "qsample/hashing.hpp"

namespace qsample {

namespace {

Bits pick(const Bits& source, const std::vector<int>& positions) {
    Bits out;
    out.reserve(positions.size());
    for (int p : positions) out.push_back(source[static_cast<std::size_t>(p)]);
    return out;
}

int eve_label(const AdversaryModel& adversary, Rng& rng) {
    if (adversary.kind != AdversaryKind::InterceptResend) return 0;
    switch (adversary.basis_policy) {
        case BasisPolicy::Computational: return 0;
        case BasisPolicy::Hadamard: return 1;
        case BasisPolicy::Random: return rng.coin() ? 1 : 0;
    }
    return 0;
}

bool labels_random(const AdversaryModel& adversary) {
    return adversary.kind == AdversaryKind::InterceptResend && adversary.basis_policy == BasisPolicy::Random;
}

int fixed_label(const AdversaryModel& adversary) {
    return adversary.kind == AdversaryKind::InterceptResend && adversary.basis_policy == BasisPolicy::Hadamard ? 1 : 0;
}

HashFamily key_family(int input_bits, int key_length) { return HashFamily(input_bits, key_length); }

struct ExactOutcome {
    double distance = 0.0;
    SecurityReport worst;
};

// Exact Delta(rho_KE, rho_K~E) with E = probes plus every public message.
ExactOutcome exact_key_distance(const QkdParams& params, const AdversaryModel& adversary, const LinearCode& code) {
    const int n = params.n;
    const int k = params.k;
    const int rest = n - k;
    const int probed = adversary.probed_positions(n);
    const int random_labels = labels_random(adversary) ? probed : 0;
    require(n <= 7, "exact mode supports at most 7 pairs");

    const auto subsets = combinations(n, k);
    double work = std::ldexp(1.0, n + random_labels) * static_cast<double>(subsets.size()) * std::ldexp(1.0, 2 * k + rest);
    work *= std::ldexp(1.0, std::max(0, rest - 1)) * std::ldexp(1.0, 2 * probed);
    check_budget(work, "exact QKD key distance");

    ExactOutcome out;
    out.worst.total_bound = -1.0;
    const double theta_weight = std::ldexp(1.0, -n);
    const double label_weight = std::ldexp(1.0, -random_labels);
    const double subset_weight = 1.0 / static_cast<double>(subsets.size());
    std::map<int, HashFamily> families;

    for (std::uint64_t theta_code = 0; theta_code < (std::uint64_t{1} << n); ++theta_code) {
        const Bits theta = unpack_bits(theta_code, n);
        for (std::uint64_t label_code = 0; label_code < (std::uint64_t{1} << random_labels); ++label_code) {
            const Bits random_bits = unpack_bits(label_code, random_labels);
            std::vector<std::array<Matrix, 4>> blocks;
            std::vector<std::array<Matrix, 2>> marginals;
            for (int i = 0; i < n; ++i) {
                const bool is_probed = i < probed;
                const int label = random_labels > 0 && is_probed ? random_bits[static_cast<std::size_t>(i)] : fixed_label(adversary);
                blocks.push_back(pair_probe_blocks(adversary, is_probed, label, theta[static_cast<std::size_t>(i)],
                                                   params.noise_flip));
                marginals.push_back({blocks.back()[0] + blocks.back()[1], blocks.back()[2] + blocks.back()[3]});
            }
            for (const auto& test : subsets) {
                const SubsetIndex test_set(test, n);
                for (std::uint64_t tested = 0; tested < (std::uint64_t{1} << (2 * k)); ++tested) {
                    const Bits xs = unpack_bits(tested >> k, k);
                    const Bits ys = unpack_bits(tested & ((std::uint64_t{1} << k) - 1), k);
                    int errors = 0;
                    for (int j = 0; j < k; ++j) errors += xs[static_cast<std::size_t>(j)] ^ ys[static_cast<std::size_t>(j)];
                    const double beta = k > 0 ? static_cast<double>(errors) / k : 0.0;
                    const int l = params.key_length.value_or(qkd_protocol_cap(n, k, params.syndrome_bits, beta));
                    const HashFamily& family = families.try_emplace(l, key_family(rest, l)).first->second;
                    const std::uint64_t seeds = std::uint64_t{1} << family.seed_bits();
                    const std::size_t keys = std::size_t{1} << l;
                    const double weight = theta_weight * label_weight * subset_weight / static_cast<double>(seeds);

                    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<Matrix>> groups;
                    double group_mass = 0.0;
                    for (std::uint64_t remaining = 0; remaining < (std::uint64_t{1} << rest); ++remaining) {
                        const Bits x_rest = unpack_bits(remaining, rest);
                        Matrix op = Matrix::Identity(1, 1);
                        std::size_t test_index = 0;
                        std::size_t rest_index = 0;
                        for (int i = 0; i < n; ++i) {
                            if (test_set.contains(i)) {
                                const int code_xy = 2 * xs[test_index] + ys[test_index];
                                ++test_index;
                                op = kron(op, blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(code_xy)]);
                            } else {
                                op = kron(op, marginals[static_cast<std::size_t>(i)][x_rest[rest_index++]]);
                            }
                        }
                        const double mass = op.trace().real();
                        if (mass <= 1e-18) continue;
                        group_mass += mass;
                        const std::uint64_t syndrome = pack_bits(code.syndrome(x_rest));
                        for (std::uint64_t r = 0; r < seeds; ++r) {
                            const auto rows = family.matrix_rows(unpack_bits(r, family.seed_bits()));
                            auto& slot = groups[{syndrome, r}];
                            if (slot.empty()) slot.assign(keys, Matrix::Zero(op.rows(), op.cols()));
                            slot[HashFamily::apply_rows(rows, remaining)] += weight * op;
                        }
                    }
                    if (group_mass <= 1e-18) continue;
                    for (const auto& [key, per_key] : groups) {
                        Matrix eve = Matrix::Zero(per_key.front().rows(), per_key.front().cols());
                        for (const auto& block : per_key) eve += block;
                        eve /= static_cast<double>(keys);
                        for (const auto& block : per_key) out.distance += 0.5 * trace_norm_hermitian(block - eve);
                    }
                    auto report = qkd_best_report(n, k, params.syndrome_bits, l, beta);
                    if (report.total_bound > out.worst.total_bound) out.worst = std::move(report);
                }
            }
        }
    }
    return out;
}

}  // namespace

void QkdParams::validate() const {
    require(n >= 1, "need at least one pair");
    require(k >= 0 && 2 * k <= n, "test subset size must satisfy 0 <= k <= n/2");
    require(syndrome_bits >= 0, "syndrome length m must be non-negative");
    require(correction_radius >= 0.0 && correction_radius < 0.5, "correction radius must satisfy 0 <= beta' < 1/2");
    require(noise_flip >= 0.0 && noise_flip < 0.5, "noise flip probability must satisfy 0 <= phi < 1/2");
    if (key_length) require(*key_length >= 0 && *key_length <= n - k, "key length must lie in [0, n - k]");
}

int QkdParams::correctable_errors() const {
    return static_cast<int>(std::floor(correction_radius * (n - k) + 1e-9));
}

std::array<Matrix, 4> pair_probe_blocks(const AdversaryModel& adversary, bool probed, int label, int theta,
                                        double noise_flip) {
    const int probe_dim = probed ? 2 : 1;
    const Dims dims{2, 2, probe_dim};
    Vector v = Vector::Zero(4 * probe_dim);
    const double amplitude = 1.0 / std::sqrt(2.0);
    v[0] = amplitude;
    v[3 * probe_dim] = amplitude;
    if (probed) v = apply_two_local(v, dims, 1, 2, attack_unitary(adversary, label));

    std::array<Matrix, 4> blocks;
    for (auto& b : blocks) b = Matrix::Zero(probe_dim, probe_dim);
    for (int flip = 0; flip < 2; ++flip) {
        const double p = flip ? noise_flip : 1.0 - noise_flip;
        if (p <= 0.0) continue;
        Vector branch = v;
        if (theta == 1) {
            branch = apply_local(branch, dims, 0, hadamard_gate());
            branch = apply_local(branch, dims, 1, hadamard_gate());
        }
        // The flip hits Bob's bit in whichever basis he measures.
        if (flip) branch = apply_local(branch, dims, 1, pauli_x());
        for (int xy = 0; xy < 4; ++xy) {
            const Vector probe = branch.segment(xy * probe_dim, probe_dim);
            blocks[static_cast<std::size_t>(xy)] += p * (probe * probe.adjoint());
        }
    }
    return blocks;
}

PureState attacked_epr_state(int n, const AdversaryModel& adversary, const Bits& labels) {
    adversary.validate();
    const int probed = adversary.probed_positions(n);
    require(static_cast<int>(labels.size()) == probed || labels.empty(), "need one label per probed position");
    const PureState epr = make_epr_pairs(n);
    Dims dims(static_cast<std::size_t>(2 * n + probed), 2);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(epr.dimension()) << probed);
    for (Eigen::Index i = 0; i < epr.amplitudes().size(); ++i) v[i << probed] = epr.amplitudes()[i];
    for (int i = 0; i < probed; ++i) {
        const int label = labels.empty() ? fixed_label(adversary) : labels[static_cast<std::size_t>(i)];
        v = apply_two_local(v, dims, n + i, 2 * n + i, attack_unitary(adversary, label));
    }
    Dims out(static_cast<std::size_t>(2 * n), 2);
    out.push_back(1 << probed);
    return PureState(std::move(v), std::move(out));
}

QkdResult simulate_qkd(const QkdParams& params, const AdversaryModel& adversary, std::uint64_t seed) {
    params.validate();
    adversary.validate();
    const int n = params.n;
    const int k = params.k;
    const int rest = n - k;
    Rng rng(seed);
    const LinearCode code = LinearCode::random(rest, params.syndrome_bits, params.correctable_errors(), rng);
    const int probed = adversary.probed_positions(n);

    QkdResult result;
    result.theta = rng.random_bits(n);
    result.alice_raw.resize(static_cast<std::size_t>(n));
    result.bob_raw.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const bool is_probed = i < probed;
        const int label = is_probed ? eve_label(adversary, rng) : 0;
        const auto blocks = pair_probe_blocks(adversary, is_probed, label, result.theta[static_cast<std::size_t>(i)],
                                              params.noise_flip);
        double u = rng.uniform();
        int outcome = 3;
        for (int xy = 0; xy < 4; ++xy) {
            u -= blocks[static_cast<std::size_t>(xy)].trace().real();
            if (u < 0.0) {
                outcome = xy;
                break;
            }
        }
        result.alice_raw[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(outcome >> 1);
        result.bob_raw[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(outcome & 1);
    }

    auto& transcript = result.transcript;
    transcript.add("distribution", "alice", "qubits-sent", "n=" + std::to_string(n));
    transcript.add("distribution", "bob", "receipt", "ok");
    transcript.add("distribution", "alice", "bases", bits_to_string(result.theta));

    result.test_subset = SubsetIndex(rng.subset(n, k), n);
    const auto& tested = result.test_subset.positions();
    const auto kept = result.test_subset.complement().positions();
    const Bits xs = pick(result.alice_raw, tested);
    const Bits ys = pick(result.bob_raw, tested);
    int errors = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) errors += xs[j] ^ ys[j];
    result.beta = k > 0 ? static_cast<double>(errors) / k : 0.0;
    transcript.add("estimation", "alice", "test-subset", result.test_subset.to_string());
    transcript.add("estimation", "alice", "test-bits", bits_to_string(xs));
    transcript.add("estimation", "bob", "test-bits", bits_to_string(ys));

    const Bits x_rest = pick(result.alice_raw, kept);
    const Bits y_rest = pick(result.bob_raw, kept);
    const Bits syndrome = code.syndrome(x_rest);
    transcript.add("correction", "alice", "syndrome", bits_to_string(syndrome));
    Bits corrected = y_rest;
    if (code.exhaustive_decoding()) {
        result.decoding_model = "exhaustive";
        if (auto decoded = code.decode(y_rest, syndrome)) {
            corrected = *decoded;
            result.decoding_succeeded = true;
        }
    } else {
        // Idealised decoder: succeeds exactly when the errors fit the correction radius.
        result.decoding_model = "idealized";
        int residual = 0;
        for (std::size_t j = 0; j < x_rest.size(); ++j) residual += x_rest[j] ^ y_rest[j];
        if (residual <= code.radius()) {
            corrected = x_rest;
            result.decoding_succeeded = true;
        }
    }

    result.key_length = params.key_length.value_or(qkd_protocol_cap(n, k, params.syndrome_bits, result.beta));
    const HashFamily family = key_family(rest, result.key_length);
    const Bits r = rng.random_bits(family.seed_bits());
    transcript.add("distillation", "alice", "hash-seed", bits_to_string(r) + ";l=" + std::to_string(result.key_length));
    result.alice_key = family.eval(r, x_rest);
    result.bob_key = family.eval(r, corrected);

    if (params.exact) {
        auto exact = exact_key_distance(params, adversary, code);
        result.report = std::move(exact.worst);
        result.report.exact_distance = std::min(1.0, std::max(0.0, exact.distance));
    } else {
        result.report = qkd_best_report(n, k, params.syndrome_bits, result.key_length, result.beta);
    }
    result.report.transcript_digest = transcript.digest();
    return result;
}

SamplingViewReport qkd_sampling_view(const PureState& state) {
    const int population = state.population_size();
    require(population >= 2 && population % 2 == 0, "state must hold n pairs ordered (A_1..A_n, B_1..B_n)");
    require(state.population_dim() == 2, "pairs must be qubits");
    const int n = population / 2;
    check_budget(std::ldexp(1.0, n) * static_cast<double>(state.population_states()) * state.dimension(),
                 "sampling view enumeration");
    const auto env = static_cast<Eigen::Index>(state.env_dim());

    // (theta, w, z) -> unnormalised environment operator.
    using Key = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;
    std::map<Key, Matrix> original;
    std::map<Key, Matrix> modified;
    auto accumulate = [&](std::map<Key, Matrix>& target, const Key& key, const Matrix& op) {
        auto [it, inserted] = target.try_emplace(key, op);
        if (!inserted) it->second += op;
    };

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) pairs.emplace_back(i, n + i);
    const PureState transformed = apply_cnot_pairs(state, pairs);
    const double theta_weight = std::ldexp(1.0, -n);
    bool opposite = true;

    for (std::uint64_t theta_code = 0; theta_code < (std::uint64_t{1} << n); ++theta_code) {
        const Bits theta = unpack_bits(theta_code, n);
        Bits both = theta;
        both.insert(both.end(), theta.begin(), theta.end());
        const BasisSpec basis(both);

        const PureState rotated = apply_basis_change(state, basis);
        for (std::uint64_t xy = 0; xy < state.population_states(); ++xy) {
            const Vector e = rotated.amplitudes().segment(static_cast<Eigen::Index>(xy) * env, env);
            if (e.squaredNorm() <= 1e-15) continue;
            const Bits x = unpack_bits(xy >> n, n);
            const Bits y = unpack_bits(xy & ((std::uint64_t{1} << n) - 1), n);
            Bits w(static_cast<std::size_t>(n));
            Bits z(static_cast<std::size_t>(n));
            for (std::size_t i = 0; i < w.size(); ++i) {
                z[i] = x[i] ^ y[i];
                w[i] = theta[i] == 0 ? x[i] : y[i];
            }
            accumulate(original, {theta_code, pack_bits(w), pack_bits(z)}, theta_weight * (e * e.adjoint()));
        }

        // Z is read from B_i when theta_i = 0 and from A_i when theta_i = 1; W from the other qubit.
        std::vector<int> z_positions;
        std::vector<int> w_positions;
        for (int i = 0; i < n; ++i) {
            const bool computational = theta[static_cast<std::size_t>(i)] == 0;
            z_positions.push_back(computational ? n + i : i);
            w_positions.push_back(computational ? i : n + i);
            // Reference basis: Hadamard on A, computational on B. W is measured in theta_i on its qubit.
            const int w_system_reference = computational ? 1 : 0;
            if (theta[static_cast<std::size_t>(i)] == w_system_reference) opposite = false;
        }
        std::sort(z_positions.begin(), z_positions.end());
        std::sort(w_positions.begin(), w_positions.end());
        const SubsetIndex z_set(z_positions, population);
        const SubsetIndex w_set(w_positions, population);
        auto pair_of = [n](int position) { return position < n ? position : position - n; };

        for (const auto& z_outcome : measure(transformed, z_set, basis)) {
            Bits z(static_cast<std::size_t>(n));
            for (std::size_t j = 0; j < z_positions.size(); ++j)
                z[static_cast<std::size_t>(pair_of(z_positions[j]))] = z_outcome.outcome[j];
            for (const auto& w_outcome : measure(z_outcome.post_state, w_set, basis)) {
                Bits w(static_cast<std::size_t>(n));
                for (std::size_t j = 0; j < w_positions.size(); ++j)
                    w[static_cast<std::size_t>(pair_of(w_positions[j]))] = w_outcome.outcome[j];
                const auto& amps = w_outcome.post_state.amplitudes();
                Matrix op = Matrix::Zero(env, env);
                for (std::size_t pop = 0; pop < state.population_states(); ++pop) {
                    const Vector e = amps.segment(static_cast<Eigen::Index>(pop) * env, env);
                    op += e * e.adjoint();
                }
                accumulate(modified, {theta_code, pack_bits(w), pack_bits(z)},
                           theta_weight * z_outcome.probability * w_outcome.probability * op);
            }
        }
    }

    SamplingViewReport report;
    auto compare = [&](const std::map<Key, Matrix>& a, const std::map<Key, Matrix>& b) {
        for (const auto& [key, op] : a) {
            const auto it = b.find(key);
            const Matrix other = it == b.end() ? Matrix::Zero(env, env) : it->second;
            const double pa = op.trace().real();
            const double pb = other.trace().real();
            report.total_variation += 0.5 * std::abs(pa - pb);
            report.max_conditional_distance =
                std::max(report.max_conditional_distance, 0.5 * trace_norm_hermitian(op - other));
        }
    };
    compare(original, modified);
    for (const auto& [key, op] : modified)
        if (!original.count(key)) {
            report.total_variation += 0.5 * op.trace().real();
            report.max_conditional_distance = std::max(report.max_conditional_distance, 0.5 * trace_norm_hermitian(op));
        }
    for (const auto& [key, op] : original)
        if (std::get<2>(key) == 0) report.z_zero_probability += op.trace().real();
    report.w_basis_opposite = opposite;
    report.equivalent = report.total_variation <= kEqualityTolerance && report.max_conditional_distance <= kEqualityTolerance;
    return report;
}

}  // namespace qsample
