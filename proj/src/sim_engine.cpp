#include "zalm/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace zalm {

SimConfig effective_config(SimConfig cfg) {
    if (cfg.sim_mode == SimMode::IDEAL) {
        cfg.spdc.emission_success_probability = 1.0;
        cfg.spdc.temporal_jitter_stdev_ps = 0.0;
        cfg.spdc.dm_insertion_loss_db = 0.0;
        cfg.spdc.dm_crosstalk_probability = 0.0;
        cfg.bs.insertion_loss_db = 0.0;
        cfg.pbs.insertion_loss_db = 0.0;
        cfg.pbs.extinction_ratio = 0.0;
        cfg.dwdm.insertion_loss_db = 0.0;
        cfg.detector.efficiency = 1.0;
        cfg.noise.gate_error_prob_single = 0.0;
        cfg.noise.gate_error_prob_two = 0.0;
        cfg.noise.measurement_dephase_prob = 0.0;
        cfg.noise.memory_depolar_rate_hz = 0.0;
        // fiber attenuation retained
    }
    return cfg;
}

TrialOutcome run_trial(const SimConfig& cfg, const DwdmGrid& grid, Rng& rng) {
    TrialOutcome out;
    auto fail = [&out](FailureStage s) -> TrialOutcome& {
        out.failure_stage = s;
        return out;
    };

    // (i) two SPDC processes triggered simultaneously
    auto pair0 = emit(cfg.spdc, 0, 0, rng);
    auto pair1 = emit(cfg.spdc, 1, 2, rng);
    if (!pair0 || !pair1) return fail(FailureStage::SOURCE);

    auto [sig0, idl0] = separate(*pair0, cfg.spdc, rng);
    auto [sig1, idl1] = separate(*pair1, cfg.spdc, rng);
    if (!sig0.alive || !idl0.alive || !sig1.alive || !idl1.alive)
        return fail(FailureStage::SOURCE);

    // Each source prepares its two qubits as a PsiPlus pair (type-II).
    DensityMatrix trial_state =
        tensor(bell_state(BellKind::PsiPlus, pair0->joint_state_qubits.first,
                          pair0->joint_state_qubits.second),
               bell_state(BellKind::PsiPlus, pair1->joint_state_qubits.first,
                          pair1->joint_state_qubits.second));

    // (iii) idlers interfere at the 50:50 beam splitter
    BsOutcome bso = beamsplit(idl0, idl1, cfg.bs, rng);
    if (!idl0.alive || !idl1.alive) return fail(FailureStage::BS_LOSS);

    // (iv) polarising beam splitters
    PbsArm arm0 = pbs_route(idl0, cfg.pbs, rng);
    if (!idl0.alive) return fail(FailureStage::BS_LOSS);
    PbsArm arm1 = pbs_route(idl1, cfg.pbs, rng);
    if (!idl1.alive) return fail(FailureStage::BS_LOSS);

    // (v) DWDM filtering
    auto ch0 = assign_channel(grid, idl0.center_freq_THz);
    auto ch1 = assign_channel(grid, idl1.center_freq_THz);
    if (!ch0 || !ch1) return fail(FailureStage::FILTER);
    if (!rng.bernoulli(
            transmission_probability(idl0, grid.channels[*ch0], cfg.dwdm)))
        return fail(FailureStage::FILTER);
    if (!rng.bernoulli(
            transmission_probability(idl1, grid.channels[*ch1], cfg.dwdm)))
        return fail(FailureStage::FILTER);

    // (vi) detectors, one per (BS port, PBS arm, channel)
    std::vector<Click> clicks;
    int occupied_detectors = 0;
    if (bso.port_of[0] == bso.port_of[1] && arm0 == arm1 && *ch0 == *ch1) {
        occupied_detectors = 1;
        const FlyingPhoton both[2] = {idl0, idl1};
        if (auto c = detect(both, bso.port_of[0], arm0, *ch0, cfg.detector, rng))
            clicks.push_back(*c);
    } else {
        occupied_detectors = 2;
        const FlyingPhoton one[1] = {idl0};
        const FlyingPhoton two[1] = {idl1};
        if (auto c = detect(one, bso.port_of[0], arm0, *ch0, cfg.detector, rng))
            clicks.push_back(*c);
        if (auto c = detect(two, bso.port_of[1], arm1, *ch1, cfg.detector, rng))
            clicks.push_back(*c);
    }
    if (static_cast<int>(clicks.size()) < occupied_detectors)
        return fail(FailureStage::DETECT);

    // (vii) heralding station
    auto hr = herald(clicks, cfg.detector, sig1.qubit_id);
    if (!hr) return fail(FailureStage::HERALD);
    out.heralded = true;
    out.bell = hr->bell;
    out.channel_index = hr->channel_index;

    // (viii) post-processing on the delayed signal pair
    DensityMatrix sig_state = apply_bs_state_update(
        trial_state, {sig0.qubit_id, sig1.qubit_id}, bso, hr->bell);
    const int signal_qubits[2] = {sig0.qubit_id, sig1.qubit_id};
    sig_state = delay_and_store(sig_state, signal_qubits,
                                cfg.noise.storage_delay_ns * 1e3, cfg.noise);
    sig_state = apply_corrections(sig_state, hr->corrections, cfg.noise);
    for (int q : signal_qubits)
        sig_state = dephase(sig_state, q, cfg.noise.measurement_dephase_prob);

    // lossy fibre to the two receivers (source in the middle)
    sig0 = fiber_transmit(sig0, cfg.fiber, rng);
    sig1 = fiber_transmit(sig1, cfg.fiber, rng);
    if (!sig0.alive || !sig1.alive) return fail(FailureStage::FIBER);

    out.delivered = true;
    out.fidelity = fidelity(sig_state, BellKind::PsiMinus);
    out.failure_stage = FailureStage::NONE;
    return out;
}

namespace {

struct Partial {
    long n = 0;
    long heralded = 0;
    long delivered = 0;
    double fid_sum = 0.0;
    double fid_sq_sum = 0.0;
    std::array<long, 4> bell_counts{};
    std::array<long, kNumFailureStages> stage_counts{};

    void add(const TrialOutcome& t) {
        ++n;
        if (t.heralded) {
            ++heralded;
            ++bell_counts[static_cast<int>(*t.bell)];
        }
        if (t.delivered) {
            ++delivered;
            fid_sum += *t.fidelity;
            fid_sq_sum += *t.fidelity * *t.fidelity;
        }
        ++stage_counts[static_cast<int>(t.failure_stage)];
    }

    void merge(const Partial& o) {
        n += o.n;
        heralded += o.heralded;
        delivered += o.delivered;
        fid_sum += o.fid_sum;
        fid_sq_sum += o.fid_sq_sum;
        for (int i = 0; i < 4; ++i) bell_counts[i] += o.bell_counts[i];
        for (int i = 0; i < kNumFailureStages; ++i)
            stage_counts[i] += o.stage_counts[i];
    }
};

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("ZALM_SIM_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

} // namespace

Metrics run_campaign(const SimConfig& cfg, long n_trials, std::uint64_t seed,
                     int threads) {
    const SimConfig eff = effective_config(cfg);
    const DwdmGrid grid = build_grid(eff.dwdm);
    const int n_workers = resolve_threads(threads);

    // Fixed chunking; chunk partials merge in index order, so sums are
    // independent of how chunks land on workers.
    const long chunk_size = 4096;
    const long n_chunks = (n_trials + chunk_size - 1) / chunk_size;
    std::vector<Partial> partials(n_chunks);

    std::atomic<long> next_chunk{0};
    auto worker = [&] {
        for (;;) {
            long c = next_chunk.fetch_add(1);
            if (c >= n_chunks) break;
            Partial& part = partials[c];
            const long lo = c * chunk_size;
            const long hi = std::min(lo + chunk_size, n_trials);
            for (long t = lo; t < hi; ++t) {
                Rng rng = trial_rng(seed, static_cast<std::uint64_t>(t));
                part.add(run_trial(eff, grid, rng));
            }
        }
    };

    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Partial total;
    for (const Partial& p : partials) total.merge(p);

    Metrics m;
    m.n_trials = total.n;
    m.heralded_count = total.heralded;
    m.delivered_count = total.delivered;
    m.herald_rate = total.n ? static_cast<double>(total.heralded) / total.n : 0.0;
    m.ebits_per_use = total.n ? static_cast<double>(total.delivered) / total.n : 0.0;
    m.bell_counts = total.bell_counts;
    m.stage_counts = total.stage_counts;
    if (total.delivered > 0) {
        m.avg_fidelity = total.fid_sum / total.delivered;
        if (total.delivered > 1) {
            double var = (total.fid_sq_sum -
                          total.fid_sum * total.fid_sum / total.delivered) /
                         (total.delivered - 1);
            m.fidelity_stderr = std::sqrt(std::max(var, 0.0) / total.delivered);
        }
    }
    return m;
}

std::vector<SweepPoint> sweep(const SimConfig& cfg, const std::string& parameter_path,
                              const std::vector<std::string>& values, int threads) {
    std::vector<SweepPoint> out;
    out.reserve(values.size());
    for (const std::string& v : values) {
        SimConfig point = cfg;
        set_config_value(point, parameter_path, v);
        validate_config(point);
        out.push_back({v, run_campaign(point, point.n_trials, point.seed, threads)});
    }
    return out;
}

const char* to_string(FailureStage s) {
    switch (s) {
    case FailureStage::SOURCE: return "SOURCE";
    case FailureStage::BS_LOSS: return "BS_LOSS";
    case FailureStage::FILTER: return "FILTER";
    case FailureStage::DETECT: return "DETECT";
    case FailureStage::HERALD: return "HERALD";
    case FailureStage::FIBER: return "FIBER";
    case FailureStage::NONE: return "NONE";
    }
    return "?";
}

} // namespace zalm
