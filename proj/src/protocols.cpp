#include "cupset/protocols.hpp"

#include <array>
#include <cmath>

#include "cupset/clifford.hpp"
#include "cupset/errors.hpp"
#include "cupset/gates.hpp"
#include "cupset/parallel.hpp"

namespace cupset {

double unbiased_square(double m_hat, std::uint64_t shots) {
  if (shots == 0) return m_hat * m_hat;
  if (shots == 1) throw Error("squared-signal estimate needs at least two shots");
  return m_hat * m_hat - shot_mean_variance(m_hat, shots);
}

double shot_mean_variance(double m_hat, std::uint64_t shots) {
  if (shots == 0) return 0.0;
  if (shots == 1) throw Error("variance estimate needs at least two shots");
  return (1.0 - m_hat * m_hat) / static_cast<double>(shots - 1);
}

namespace {

ShotEstimate to_estimate(double z, std::uint64_t shots) {
  ShotEstimate e;
  e.value = z;
  e.stderr_ = shots == 0 ? 0.0 : std::sqrt(std::max(0.0, 1.0 - z * z) / static_cast<double>(shots));
  return e;
}

// SWAP test on chosen registers of two preparation circuits.
ShotEstimate swap_test_registers(const CircuitSpec& rho_prep, const std::vector<int>& rho_reg,
                                 const CircuitSpec& sigma_prep, const std::vector<int>& sigma_reg,
                                 const NoiseModel& noise, SeededRng& rng) {
  if (rho_reg.size() != sigma_reg.size() || rho_reg.empty())
    throw DimensionError("swap_test: state registers differ in size");
  const int nr = rho_prep.n_qubits, ns = sigma_prep.n_qubits;
  CircuitSpec c(1 + nr + ns);
  std::vector<int> map_r(static_cast<std::size_t>(nr)), map_s(static_cast<std::size_t>(ns));
  for (int i = 0; i < nr; ++i) map_r[static_cast<std::size_t>(i)] = 1 + i;
  for (int i = 0; i < ns; ++i) map_s[static_cast<std::size_t>(i)] = 1 + nr + i;
  c.append(rho_prep, map_r).append(sigma_prep, map_s);
  c.h(0);
  for (std::size_t i = 0; i < rho_reg.size(); ++i) c.cswap(0, 1 + rho_reg[i], 1 + nr + sigma_reg[i]);
  c.h(0).measure(0);
  const RunResult r = run_circuit(c, noise, zero_state(c.n_qubits), rng);
  return to_estimate(r.z_estimate, noise.shots);
}

std::vector<int> first_k(int k) {
  std::vector<int> reg(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) reg[static_cast<std::size_t>(i)] = i;
  return reg;
}

// Average of the four settings tr[rho_i rho_j], i, j in {0, 1}.
ShotEstimate average_settings(const std::array<ShotEstimate, 4>& runs) {
  ShotEstimate out;
  double var = 0.0;
  for (const auto& r : runs) {
    out.value += r.value / 4.0;
    var += r.stderr_ * r.stderr_ / 16.0;
  }
  out.stderr_ = std::sqrt(var);
  return out;
}

// d = 2: u = (2/3)(2 gamma_complement - gamma_channel), both at the maximally mixed input.
std::pair<double, double> complementary_unitarity(const ShotEstimate& g_channel, const ShotEstimate& g_comp) {
  const double u = (2.0 / 3.0) * (2.0 * g_comp.value - g_channel.value);
  const double se = (2.0 / 3.0) * std::sqrt(4.0 * g_comp.stderr_ * g_comp.stderr_ + g_channel.stderr_ * g_channel.stderr_);
  return {u, se};
}

// u = (2/3)(2 gamma(J) - gamma(E(I/2))).
std::pair<double, double> choi_unitarity(const ShotEstimate& g_choi, const ShotEstimate& g_out) {
  const double u = (2.0 / 3.0) * (2.0 * g_choi.value - g_out.value);
  const double se = (2.0 / 3.0) * std::sqrt(4.0 * g_choi.stderr_ * g_choi.stderr_ + g_out.stderr_ * g_out.stderr_);
  return {u, se};
}

}  // namespace

ShotEstimate swap_test(const CircuitSpec& rho_prep, const CircuitSpec& sigma_prep, const NoiseModel& noise,
                       SeededRng& rng, int state_qubits) {
  if (state_qubits < 0) {
    if (rho_prep.n_qubits != sigma_prep.n_qubits) throw DimensionError("swap_test: state widths differ");
    state_qubits = rho_prep.n_qubits;
  }
  if (state_qubits > rho_prep.n_qubits || state_qubits > sigma_prep.n_qubits)
    throw DimensionError("swap_test: state register wider than preparation circuit");
  return swap_test_registers(rho_prep, first_k(state_qubits), sigma_prep, first_k(state_qubits), noise, rng);
}

ShotEstimate swap_test(const CircuitSpec& rho_prep, const CircuitSpec& sigma_prep, const NoiseModel& noise,
                       int state_qubits) {
  SeededRng rng(noise.seed);
  return swap_test(rho_prep, sigma_prep, noise, rng, state_qubits);
}

DirectCupEstimate estimate_cup_direct_complementarity(const DenseOperator& u_ab, const NoiseModel& noise) {
  require_unitary(u_ab, "estimate_cup_direct_complementarity");
  if (u_ab.rows() != 4) throw DimensionError("direct estimation expects a two-qubit unitary");
  // run index = 4 * marginal + 2 * i + j
  std::array<ShotEstimate, 8> runs;
  const SeededRng master(noise.seed);
  parallel_for(runs.size(), [&](std::size_t idx) {
    const int marginal = static_cast<int>(idx / 4), i = static_cast<int>((idx / 2) % 2), j = static_cast<int>(idx % 2);
    auto copy = [&](int flip) {
      CircuitSpec c(2);
      if (flip) c.x(0);
      c.unitary(u_ab, {0, 1});
      return c;
    };
    SeededRng rng = master.derive(idx);
    const std::vector<int> reg{marginal};
    runs[idx] = swap_test_registers(copy(i), reg, copy(j), reg, noise, rng);
  });
  DirectCupEstimate out;
  out.purity_out_A = average_settings({runs[0], runs[1], runs[2], runs[3]});
  out.purity_out_B = average_settings({runs[4], runs[5], runs[6], runs[7]});
  const auto [u, u_se] = complementary_unitarity(out.purity_out_A, out.purity_out_B);
  const auto [ub, ub_se] = complementary_unitarity(out.purity_out_B, out.purity_out_A);
  out.cup.u = u;
  out.cup.ubar = ub;
  out.cup.variant = CupVariant::Isometric;
  out.cup.family = CupFamily::Custom;
  out.u_stderr = u_se;
  out.ubar_stderr = ub_se;
  out.max_qubits = 5;
  return out;
}

DirectCupEstimate estimate_cup_direct_choi(const DenseOperator& u_ab, const DenseOperator& ancilla,
                                           const NoiseModel& noise) {
  require_unitary(u_ab, "estimate_cup_direct_choi");
  if (u_ab.rows() != 4) throw DimensionError("direct estimation expects a two-qubit unitary");
  if (ancilla.rows() != 2 || ancilla.cols() != 2) throw DimensionError("ancilla must be a qubit state");
  bool mixed;
  if (ancilla.max_abs_diff(DenseOperator::basis_projector(2, 0)) < 1e-12) {
    mixed = false;
  } else if (ancilla.max_abs_diff(DenseOperator::maximally_mixed(2)) < 1e-12) {
    mixed = true;
  } else {
    throw Error("Choi pipeline supports ancilla |0><0| or I/2 only");
  }
  // Copy layout: 0 input/output, 1 ancilla, then [partner of ancilla], then [reference].
  const int partner = mixed ? 2 : -1;
  auto base = [&](bool with_ref) {
    const int width = 2 + (mixed ? 1 : 0) + (with_ref ? 1 : 0);
    CircuitSpec c(width);
    if (with_ref) c.h(width - 1).cnot(width - 1, 0);
    if (mixed) c.h(partner).cnot(partner, 1);
    return c;
  };
  auto finish = [&](CircuitSpec c, bool comp) {
    c.unitary(u_ab, {0, 1});
    if (comp) c.swap(0, 1);
    return c;
  };
  // Runs 0..3: output purity settings for E, 4..7 for Ebar, 8: Choi E, 9: Choi Ebar.
  std::array<ShotEstimate, 10> runs;
  const SeededRng master(noise.seed);
  parallel_for(runs.size(), [&](std::size_t idx) {
    SeededRng rng = master.derive(idx);
    if (idx < 8) {
      const bool comp = idx >= 4;
      const int i = static_cast<int>((idx / 2) % 2), j = static_cast<int>(idx % 2);
      CircuitSpec a = base(false), b = base(false);
      if (i) a.x(0);
      if (j) b.x(0);
      runs[idx] = swap_test_registers(finish(a, comp), {0}, finish(b, comp), {0}, noise, rng);
    } else {
      const bool comp = idx == 9;
      const CircuitSpec c = finish(base(true), comp);
      const int ref = c.n_qubits - 1;
      runs[idx] = swap_test_registers(c, {0, ref}, c, {0, ref}, noise, rng);
    }
  });
  DirectCupEstimate out;
  out.purity_out_A = average_settings({runs[0], runs[1], runs[2], runs[3]});
  out.purity_out_B = average_settings({runs[4], runs[5], runs[6], runs[7]});
  out.purity_choi_A = runs[8];
  out.purity_choi_B = runs[9];
  const auto [u, u_se] = choi_unitarity(out.purity_choi_A, out.purity_out_A);
  const auto [ub, ub_se] = choi_unitarity(out.purity_choi_B, out.purity_out_B);
  out.cup.u = u;
  out.cup.ubar = ub;
  out.cup.variant = mixed ? CupVariant::Reversible : CupVariant::Isometric;
  out.cup.family = CupFamily::Custom;
  out.u_stderr = u_se;
  out.ubar_stderr = ub_se;
  out.max_qubits = 1 + 2 * (mixed ? 4 : 3);
  return out;
}

CircuitSpec interleave_block(const DenseOperator& u_ab, UrbTarget target, bool mixed_ancilla) {
  require_unitary(u_ab, "interleave_block");
  if (u_ab.rows() != 4) throw DimensionError("interleave_block expects a two-qubit unitary");
  CircuitSpec c(mixed_ancilla ? 3 : 2);
  if (mixed_ancilla) c.h(2).cnot(2, 1);
  c.unitary(u_ab, {0, 1}, "interleave");
  if (target == UrbTarget::Ebar) c.swap(0, 1);
  return c;
}

CircuitSpec urb_sequence(const CircuitSpec& block, const std::vector<DenseOperator>& cliffords) {
  if (cliffords.empty()) throw Error("urb_sequence: need at least one Clifford");
  CircuitSpec c(block.n_qubits);
  std::vector<int> identity_map(static_cast<std::size_t>(block.n_qubits));
  for (int q = 0; q < block.n_qubits; ++q) identity_map[static_cast<std::size_t>(q)] = q;
  for (std::size_t i = 0; i < cliffords.size(); ++i) {
    c.unitary(cliffords[i], {0}, "clifford");
    for (int q = 1; q < block.n_qubits; ++q) c.reset(q);
    if (i + 1 < cliffords.size()) c.append(block, identity_map);
  }
  c.measure(0);
  return c;
}

namespace {

void check_schedule(const std::vector<int>& lengths, int n_sequences, const NoiseModel& noise) {
  if (lengths.empty() || lengths.front() < 1) throw Error("lengths must be non-empty with minimum >= 1");
  for (std::size_t i = 1; i < lengths.size(); ++i)
    if (lengths[i] <= lengths[i - 1]) throw Error("lengths must be strictly increasing");
  if (n_sequences < 2) throw Error("need at least two sequences per length");
  if (noise.shots == 1) throw Error("need at least two shots per circuit");
  validate(noise);
}

// Preparations of the six Pauli eigenstates from |0>, ordered (X+, X-, Y+, Y-, Z+, Z-).
std::array<DenseOperator, 6> eigenstate_preps() {
  const DenseOperator h = gates::H(), s = gates::S(), x = gates::X(), id = DenseOperator::identity(2);
  return {h, h * x, s * h, s * h * x, id, x};
}

// Rotations taking X, Y, Z to Z.
std::array<DenseOperator, 3> basis_changes() {
  const DenseOperator h = gates::H(), sdg = gates::S().adjoint();
  return {h, h * sdg, DenseOperator::identity(2)};
}

// Cliffords with a preparation folded into the first and a basis change into the last.
std::vector<DenseOperator> folded(std::vector<DenseOperator> cl, const DenseOperator& prep,
                                  const DenseOperator& basis) {
  cl.front() = cl.front() * prep;
  cl.back() = basis * cl.back();
  return cl;
}

double measure_z(const CircuitSpec& block, const std::vector<DenseOperator>& cl, const NoiseModel& noise,
                 SeededRng& shots_rng) {
  const CircuitSpec c = urb_sequence(block, cl);
  return run_circuit(c, noise, zero_state(c.n_qubits), shots_rng).z_estimate;
}

struct LengthStats {
  std::vector<double> mean, stderr_;
};

template <class PerSequence>
LengthStats sequence_means(const std::vector<int>& lengths, int n_sequences, const NoiseModel& noise,
                                   PerSequence&& per_sequence) {
  const std::size_t n_seq = static_cast<std::size_t>(n_sequences);
  std::vector<double> values(lengths.size() * n_seq);
  const SeededRng master(noise.seed);
  parallel_for(values.size(), [&](std::size_t idx) {
    const int k = lengths[idx / n_seq];
    SeededRng gate_rng = master.derive(2 * idx), shot_rng = master.derive(2 * idx + 1);
    std::vector<DenseOperator> cl;
    cl.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cl.push_back(random_clifford(gate_rng));
    values[idx] = per_sequence(cl, shot_rng);
  });
  LengthStats out;
  out.mean.assign(lengths.size(), 0.0);
  out.stderr_.assign(lengths.size(), 0.0);
  const double n = static_cast<double>(n_seq);
  for (std::size_t i = 0; i < values.size(); ++i) out.mean[i / n_seq] += values[i] / n;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double e = values[i] - out.mean[i / n_seq];
    out.stderr_[i / n_seq] += e * e / (n - 1.0);
  }
  for (double& v : out.stderr_) v = std::sqrt(v / n);
  return out;
}

std::vector<double> as_doubles(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

DecayFit run_interleaved_urb_circuit(const CircuitSpec& block, const std::vector<int>& lengths, int n_sequences,
                                     const NoiseModel& noise, const UrbOptions& opts) {
  check_schedule(lengths, n_sequences, noise);
  validate(block);
  const auto preps = eigenstate_preps();
  const auto bases = basis_changes();
  const auto stats = sequence_means(lengths, n_sequences, noise, [&](const std::vector<DenseOperator>& cl,
                                                                     SeededRng& shot_rng) {
    if (!opts.average_states) return unbiased_square(measure_z(block, cl, noise, shot_rng), noise.shots);
    double acc = 0.0;
    for (const auto& p : preps)
      for (const auto& b : bases)
        acc += unbiased_square(measure_z(block, folded(cl, p, b), noise, shot_rng), noise.shots);
    return acc / 18.0;
  });
  DecayFit fit = fit_decay(as_doubles(lengths), stats.mean, true);
  fit.y_stderr = stats.stderr_;
  fit.s_stderr = rate_stderr_from_points(fit);
  return fit;
}

DecayFit run_interleaved_urb(const DenseOperator& u_ab, UrbTarget target, const std::vector<int>& lengths,
                             int n_sequences, const NoiseModel& noise, const UrbOptions& opts) {
  return run_interleaved_urb_circuit(interleave_block(u_ab, target), lengths, n_sequences, noise, opts);
}

DecayFit run_efficient_urb(const CircuitSpec& channel_circuit, const std::vector<int>& lengths, int n_sequences,
                           const NoiseModel& noise) {
  check_schedule(lengths, n_sequences, noise);
  validate(channel_circuit);
  const auto preps = eigenstate_preps();
  const auto bases = basis_changes();
  const auto stats = sequence_means(lengths, n_sequences, noise, [&](const std::vector<DenseOperator>& cl,
                                                                     SeededRng& shot_rng) {
    double q = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double mp = measure_z(channel_circuit, folded(cl, preps[2 * i], bases[j]), noise, shot_rng);
        const double mm = measure_z(channel_circuit, folded(cl, preps[2 * i + 1], bases[j]), noise, shot_rng);
        const double diff = mp - mm;
        q += diff * diff - shot_mean_variance(mp, noise.shots) - shot_mean_variance(mm, noise.shots);
      }
    // Normalized Pauli basis: each term carries 1/d^2 = 1/4; average over d^2 - 1 = 3 inputs.
    return q / 12.0;
  });
  DecayFit fit = fit_decay(as_doubles(lengths), stats.mean, false);
  fit.y_stderr = stats.stderr_;
  fit.s_stderr = rate_stderr_from_points(fit);
  return fit;
}

}  // namespace cupset
