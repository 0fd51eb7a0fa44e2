#include "lrdcp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "lrdcp/errors.hpp"
#include "lrdcp/rng.hpp"

namespace lrdcp {

namespace {

const char* method_name(Method m) { return m == Method::Cusum ? "cusum" : "wilcoxon"; }
const char* sidedness_name(Sidedness s) { return s == Sidedness::TwoSided ? "two" : "one"; }

Method method_from(const std::string& s) {
    if (s == "cusum") return Method::Cusum;
    if (s == "wilcoxon") return Method::Wilcoxon;
    throw Error("unknown method '" + s + "'");
}

Sidedness sidedness_from(const std::string& s) {
    if (s == "two") return Sidedness::TwoSided;
    if (s == "one") return Sidedness::OneSided;
    throw Error("unknown sidedness '" + s + "'");
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) { return mix64(h ^ mix64(v)); }

std::uint64_t bits_of(double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof(u));
    return u;
}

std::uint64_t hash_string(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ull;
    return h;
}

// Runs fn(state, r) for every replication index with one state per thread,
// partitioning the index range statically, then merge(state) for each state
// under a lock. Per-index writes and commutative merges keep the result
// independent of the schedule.
template <class MakeState, class Fn, class Merge>
void parallel_replications(int reps, int threads, MakeState make_state, Fn fn,
                           Merge merge) {
    const int nthreads = std::max(1, std::min(resolve_threads(threads), reps));
    if (nthreads == 1) {
        auto state = make_state();
        for (int r = 0; r < reps; ++r) fn(state, r);
        merge(state);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::exception_ptr error;
    std::mutex sync;
    for (int t = 0; t < nthreads; ++t) {
        const int lo = static_cast<int>(static_cast<long>(reps) * t / nthreads);
        const int hi = static_cast<int>(static_cast<long>(reps) * (t + 1) / nthreads);
        pool.emplace_back([&, lo, hi] {
            try {
                auto state = make_state();
                for (int r = lo; r < hi; ++r) fn(state, r);
                std::lock_guard<std::mutex> lock(sync);
                merge(state);
            } catch (...) {
                std::lock_guard<std::mutex> lock(sync);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct CellWorkspace {
    FgnSampler sampler;
    std::vector<double> noise;
    long rejections = 0;
    explicit CellWorkspace(int n, const LrdSpec& spec) : sampler(n, spec) {}
};

// Single power cell: R replications of fgn -> transform -> shift -> tests.
PowerCell evaluate_power_cell(int n, double tau, double h,
                              std::optional<double> shift_constant, Method method,
                              const Transform& transform, const LrdSpec& spec,
                              Sidedness sidedness, int reps, std::uint64_t cell_seed,
                              int threads, double critical_value) {
    const double scale = static_cast<double>(n) * dn(n, spec);
    long total = 0;

    parallel_replications(
        reps, threads,
        [&] { return std::make_unique<CellWorkspace>(n, spec); },
        [&](std::unique_ptr<CellWorkspace>& ws, int r) {
            ws->sampler.generate_into(derive_seed(cell_seed, r), ws->noise);
            Series x = apply_transform(ws->noise, transform);
            x = inject_shift(std::move(x), tau, h);
            const auto path = (method == Method::Cusum) ? cusum_path(x) : wilcoxon_path(x);
            const double stat = path_extremum(path, sidedness) / scale;
            if (stat >= critical_value) ++ws->rejections;
        },
        [&](std::unique_ptr<CellWorkspace>& ws) { total += ws->rejections; });

    PowerCell cell;
    cell.n = n;
    cell.tau = tau;
    cell.shift = h;
    cell.shift_constant = shift_constant;
    cell.method = method;
    cell.critical_value = critical_value;
    cell.reps = reps;
    cell.rejections = total;
    cell.power = static_cast<double>(cell.rejections) / reps;
    cell.std_error = std::sqrt(cell.power * (1.0 - cell.power) / reps);
    return cell;
}

}  // namespace

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix64(base + (index + 1) * 0x9E3779B97F4A7C15ull);
}

double upper_quantile(std::vector<double> sample, double alpha) {
    if (sample.empty()) throw Error("upper_quantile: empty sample");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("upper_quantile: alpha in [0,1]");
    std::sort(sample.begin(), sample.end());
    const long reps = static_cast<long>(sample.size());
    long idx = static_cast<long>(std::ceil((1.0 - alpha) * static_cast<double>(reps)));
    idx = std::clamp(idx, 1l, reps);
    return sample[idx - 1];
}

bool QuantileKey::operator<(const QuantileKey& o) const {
    return std::tie(alpha, hurst, sample_size, sidedness, method, transform) <
           std::tie(o.alpha, o.hurst, o.sample_size, o.sidedness, o.method, o.transform);
}

void QuantileTable::insert(const QuantileKey& key, const QuantileEntry& entry) {
    entries_[key] = entry;
}

const QuantileEntry* QuantileTable::find(const QuantileKey& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

const QuantileEntry* QuantileTable::lookup(const QuantileKey& key) const {
    if (const QuantileEntry* e = find(key)) return e;
    QuantileKey asym = key;
    asym.sample_size = kAsymptotic;
    return find(asym);
}

void QuantileTable::save_csv(std::ostream& out) const {
    out << "schema,alpha,hurst,sample_size,sidedness,method,transform,"
           "critical_value,replications,grid_n,base_seed,estimator\n";
    char buf[256];
    for (const auto& [key, e] : entries_) {
        std::string size_str = key.sample_size == kAsymptotic
                                   ? "asymptotic"
                                   : std::to_string(key.sample_size);
        std::snprintf(buf, sizeof(buf), "1,%.17g,%.17g,%s,%s,%s,%s,%.17g,%ld,%d,%llu,%s\n",
                      key.alpha, key.hurst, size_str.c_str(), sidedness_name(key.sidedness),
                      method_name(key.method), key.transform.c_str(), e.critical_value,
                      e.replications, e.grid_n,
                      static_cast<unsigned long long>(e.base_seed), e.estimator.c_str());
        out << buf;
    }
}

QuantileTable QuantileTable::load_csv(std::istream& in) {
    QuantileTable table;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            if (line.rfind("schema,", 0) != 0)
                throw InputError("quantile table: unexpected header '" + line + "'");
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 12)
            throw InputError("quantile table: expected 12 fields, got " +
                             std::to_string(fields.size()));
        if (fields[0] != "1") throw InputError("quantile table: unsupported schema " + fields[0]);
        QuantileKey key;
        key.alpha = std::stod(fields[1]);
        key.hurst = std::stod(fields[2]);
        key.sample_size = fields[3] == "asymptotic" ? kAsymptotic : std::stoi(fields[3]);
        key.sidedness = sidedness_from(fields[4]);
        key.method = method_from(fields[5]);
        key.transform = fields[6];
        QuantileEntry entry;
        entry.critical_value = std::stod(fields[7]);
        entry.replications = std::stol(fields[8]);
        entry.grid_n = std::stoi(fields[9]);
        entry.base_seed = std::stoull(fields[10]);
        entry.estimator = fields[11];
        table.insert(key, entry);
    }
    return table;
}

double asymptotic_quantile(double hurst, double alpha, Sidedness sidedness, int grid_n,
                           int reps, std::uint64_t seed, int threads) {
    if (grid_n < 1024) throw Error("asymptotic_quantile: grid_n must be >= 1024");
    if (reps < 1000) throw Error("asymptotic_quantile: reps must be >= 1000");
    const LrdSpec spec(hurst);
    const double scale = std::pow(static_cast<double>(grid_n), -hurst);
    std::vector<double> sups(reps);

    parallel_replications(
        reps, threads, [&] { return std::make_unique<CellWorkspace>(grid_n, spec); },
        [&](std::unique_ptr<CellWorkspace>& ws, int r) {
            ws->sampler.generate_into(derive_seed(seed, r), ws->noise);
            const auto& xi = ws->noise;
            double cum = 0.0;
            double bh1 = 0.0;
            for (double v : xi) bh1 += v;
            bh1 *= scale;
            double sup = 0.0;
            for (int k = 1; k <= grid_n; ++k) {
                cum += xi[k - 1];
                const double bridge =
                    cum * scale - (static_cast<double>(k) / grid_n) * bh1;
                const double v = (sidedness == Sidedness::TwoSided) ? std::fabs(bridge) : bridge;
                if (v > sup) sup = v;
            }
            sups[r] = sup;
        },
        [](std::unique_ptr<CellWorkspace>&) {});

    return upper_quantile(std::move(sups), alpha);
}

double finite_sample_quantile(int n, const Transform& transform, double hurst,
                              Method method, double alpha, int reps, std::uint64_t seed,
                              int threads, Sidedness sidedness) {
    if (reps < 1000) throw Error("finite_sample_quantile: reps must be >= 1000");
    const LrdSpec spec(hurst);
    const double scale = static_cast<double>(n) * dn(n, spec);
    std::vector<double> stats(reps);

    parallel_replications(
        reps, threads, [&] { return std::make_unique<CellWorkspace>(n, spec); },
        [&](std::unique_ptr<CellWorkspace>& ws, int r) {
            ws->sampler.generate_into(derive_seed(seed, r), ws->noise);
            const Series x = apply_transform(ws->noise, transform);
            const auto path = (method == Method::Cusum) ? cusum_path(x) : wilcoxon_path(x);
            stats[r] = path_extremum(path, sidedness) / scale;
        },
        [](std::unique_ptr<CellWorkspace>&) {});

    return upper_quantile(std::move(stats), alpha);
}

double brownian_bridge_sup_quantile(double alpha, Sidedness sidedness) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must lie in (0,1)");
    if (sidedness == Sidedness::OneSided) return std::sqrt(-0.5 * std::log(alpha));
    // P(sup |BB| > x) = 2 sum_{k>=1} (-1)^{k+1} exp(-2 k^2 x^2)
    auto tail = [](double x) {
        double s = 0.0;
        for (int k = 1; k <= 100; ++k) {
            const double term = std::exp(-2.0 * k * k * x * x);
            if (term < 1e-18) break;
            s += (k % 2 == 1) ? term : -term;
        }
        return 2.0 * s;
    };
    double lo = 0.1, hi = 4.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (tail(mid) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

void PowerStudyConfig::validate() const {
    if (reps < 1) throw Error("power study: reps must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error("power study: alpha must lie in (0,1)");
    for (double t : taus)
        if (!(t >= 0.0 && t <= 1.0)) throw Error("power study: taus must lie in [0,1]");
    if (sizes.empty() || taus.empty() || shifts.empty() || methods.empty())
        throw Error("power study: empty grid");
}

std::vector<PowerCell> run_power_study(const PowerStudyConfig& config,
                                       const QuantileTable& quantiles) {
    config.validate();
    const LrdSpec spec(config.hurst);
    const Transform transform = transform_by_name(config.transform);

    // Fail fast on missing critical values.
    std::map<std::pair<int, Method>, double> criticals;
    for (int n : config.sizes) {
        for (Method m : config.methods) {
            const QuantileKey key{config.alpha, config.hurst, n, config.sidedness, m,
                                  config.transform};
            const QuantileEntry* e = quantiles.lookup(key);
            if (!e)
                throw MissingQuantile(std::string("no critical value for method=") +
                                      method_name(m) + " n=" + std::to_string(n) +
                                      " alpha=" + std::to_string(config.alpha) +
                                      " transform=" + config.transform);
            criticals[{n, m}] = e->critical_value;
        }
    }

    std::vector<PowerCell> cells;
    for (int n : config.sizes) {
        for (double tau : config.taus) {
            for (const Shift& shift : config.shifts) {
                const double h = shift.is_constant
                                     ? shift.value * std::pow(n, -0.5 * spec.d())
                                     : shift.value;
                std::uint64_t cell_hash = hash_combine(0x9e3779b97f4a7c15ull, n);
                cell_hash = hash_combine(cell_hash, bits_of(tau));
                cell_hash = hash_combine(cell_hash, bits_of(h));
                cell_hash = hash_combine(cell_hash, bits_of(config.hurst));
                cell_hash = hash_combine(cell_hash, hash_string(config.transform));
                const std::uint64_t cell_seed = config.base_seed ^ cell_hash;

                // Methods share the generated series: evaluate per method with
                // the same cell seed.
                for (Method m : config.methods) {
                    std::optional<double> c;
                    if (shift.is_constant) c = shift.value;
                    cells.push_back(evaluate_power_cell(
                        n, tau, h, c, m, transform, spec, config.sidedness, config.reps,
                        cell_seed, config.threads, criticals[{n, m}]));
                }
            }
        }
    }
    return cells;
}

void write_power_csv(std::ostream& out, const std::vector<PowerCell>& cells,
                     const PowerStudyConfig& config) {
    out << "schema,n,tau,shift,shift_constant,method,transform,hurst,alpha,sidedness,"
           "critical_value,rejections,reps,power,std_error,base_seed\n";
    char buf[320];
    for (const PowerCell& c : cells) {
        std::string sc = c.shift_constant ? std::to_string(*c.shift_constant) : "";
        std::snprintf(buf, sizeof(buf),
                      "1,%d,%.17g,%.17g,%s,%s,%s,%.17g,%.17g,%s,%.17g,%ld,%d,%.6f,%.6f,%llu\n",
                      c.n, c.tau, c.shift, sc.c_str(), method_name(c.method),
                      config.transform.c_str(), config.hurst, config.alpha,
                      sidedness_name(config.sidedness), c.critical_value, c.rejections,
                      c.reps, c.power, c.std_error,
                      static_cast<unsigned long long>(config.base_seed));
        out << buf;
    }
}

void write_power_json(std::ostream& out, const std::vector<PowerCell>& cells,
                      const PowerStudyConfig& config) {
    char buf[320];
    out << "{\n  \"schema\": 1,\n  \"config\": {";
    std::snprintf(buf, sizeof(buf),
                  "\"transform\": \"%s\", \"hurst\": %.17g, \"alpha\": %.17g, "
                  "\"sidedness\": \"%s\", \"reps\": %d, \"base_seed\": %llu",
                  config.transform.c_str(), config.hurst, config.alpha,
                  sidedness_name(config.sidedness), config.reps,
                  static_cast<unsigned long long>(config.base_seed));
    out << buf << "},\n  \"cells\": [\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const PowerCell& c = cells[i];
        std::snprintf(buf, sizeof(buf),
                      "    {\"n\": %d, \"tau\": %.17g, \"shift\": %.17g, \"method\": \"%s\", "
                      "\"critical_value\": %.17g, \"rejections\": %ld, \"reps\": %d, "
                      "\"power\": %.6f, \"std_error\": %.6f}%s\n",
                      c.n, c.tau, c.shift, method_name(c.method), c.critical_value,
                      c.rejections, c.reps, c.power, c.std_error,
                      i + 1 < cells.size() ? "," : "");
        out << buf;
    }
    out << "  ]\n}\n";
}

std::vector<MatchedPair> matched_are_study(const MatchedStudyConfig& config,
                                           const HermiteSummary& summary,
                                           const QuantileTable& quantiles) {
    if (config.reps < 1) throw Error("matched study: reps must be >= 1");
    const LrdSpec spec(config.hurst);
    const Transform transform = transform_by_name(config.transform);
    const double d = spec.d();
    const double ratio = summary.shift_ratio;
    const double b = std::pow(ratio, -2.0 / d);  // n_C = n_W / b

    std::vector<int> n_c = config.n_c;
    if (n_c.empty()) {
        for (int nw : config.n_w)
            n_c.push_back(static_cast<int>(std::lround(nw / b)));
    }
    if (n_c.size() != config.n_w.size())
        throw Error("matched study: n_c list must match n_w list");

    const double rescale =
        (config.calibration == MatchedCalibration::AsPublished) ? 1.0 / ratio : 1.0;
    const double c_w = config.c_w * rescale;
    const double c_c = ratio * config.c_w * rescale;

    const QuantileKey wil_key{config.alpha, config.hurst, kAsymptotic, config.sidedness,
                              Method::Wilcoxon, config.transform};
    const QuantileEntry* wil = quantiles.lookup(wil_key);
    if (!wil) throw MissingQuantile("matched study: no asymptotic wilcoxon critical value");

    std::vector<MatchedPair> pairs;
    for (std::size_t i = 0; i < config.n_w.size(); ++i) {
        const int nw = config.n_w[i];
        const int nc = n_c[i];
        const QuantileKey cusum_key{config.alpha, config.hurst, nc, config.sidedness,
                                    Method::Cusum, config.transform};
        const QuantileEntry* cus = quantiles.find(cusum_key);
        if (!cus)
            throw MissingQuantile("matched study: no finite-sample cusum quantile at n=" +
                                  std::to_string(nc));
        const double h_w = c_w * std::pow(nw, -0.5 * d);
        const double h_c = c_c * std::pow(nc, -0.5 * d);
        for (double tau : config.taus) {
            MatchedPair pair;
            pair.n_w = nw;
            pair.n_c = nc;
            pair.tau = tau;
            pair.h_w = h_w;
            pair.h_c = h_c;
            const std::uint64_t seed_w =
                config.base_seed ^ hash_combine(hash_combine(0x57ull, nw), bits_of(tau));
            const std::uint64_t seed_c =
                config.base_seed ^ hash_combine(hash_combine(0xc5ull, nc), bits_of(tau));
            pair.wilcoxon = evaluate_power_cell(nw, tau, h_w, c_w, Method::Wilcoxon,
                                                transform, spec, config.sidedness,
                                                config.reps, seed_w, config.threads,
                                                wil->critical_value);
            pair.cusum = evaluate_power_cell(nc, tau, h_c, c_c, Method::Cusum, transform,
                                             spec, config.sidedness, config.reps, seed_c,
                                             config.threads, cus->critical_value);
            pairs.push_back(std::move(pair));
        }
    }
    return pairs;
}

double PsiCurve::inverse(double beta) const {
    for (std::size_t i = 0; i < t_values.size(); ++i)
        if (psi[i] >= beta) return t_values[i];
    return std::numeric_limits<double>::infinity();
}

PsiCurve psi_curve(double hurst, double tau, double q_alpha,
                   const std::vector<double>& t_values, int grid_n, int reps,
                   std::uint64_t seed, int threads) {
    if (grid_n < 1024) throw Error("psi_curve: grid_n must be >= 1024");
    if (reps < 1000) throw Error("psi_curve: reps must be >= 1000");
    const LrdSpec spec(hurst);
    const double scale = std::pow(static_cast<double>(grid_n), -hurst);
    std::vector<long> counts(t_values.size(), 0);

    struct PsiState {
        CellWorkspace ws;
        std::vector<long> counts;
        PsiState(int n, const LrdSpec& s, std::size_t nt) : ws(n, s), counts(nt, 0) {}
    };

    parallel_replications(
        reps, threads,
        [&] { return std::make_unique<PsiState>(grid_n, spec, t_values.size()); },
        [&](std::unique_ptr<PsiState>& state, int r) {
            state->ws.sampler.generate_into(derive_seed(seed, r), state->ws.noise);
            const auto& xi = state->ws.noise;
            double bh1 = 0.0;
            for (double v : xi) bh1 += v;
            bh1 *= scale;
            // sup over lambda of bridge + t*phi, one pass per t.
            for (std::size_t ti = 0; ti < t_values.size(); ++ti) {
                double cum = 0.0;
                double sup = -std::numeric_limits<double>::infinity();
                for (int k = 1; k <= grid_n; ++k) {
                    cum += xi[k - 1];
                    const double lambda = static_cast<double>(k) / grid_n;
                    const double v =
                        cum * scale - lambda * bh1 + t_values[ti] * phi_tau(tau, lambda);
                    if (v > sup) sup = v;
                }
                if (sup >= q_alpha) ++state->counts[ti];
            }
        },
        [&](std::unique_ptr<PsiState>& state) {
            for (std::size_t ti = 0; ti < t_values.size(); ++ti)
                counts[ti] += state->counts[ti];
        });

    PsiCurve curve;
    curve.t_values = t_values;
    curve.psi.assign(t_values.size(), 0.0);
    for (std::size_t ti = 0; ti < t_values.size(); ++ti)
        curve.psi[ti] = static_cast<double>(counts[ti]) / reps;
    return curve;
}

}  // namespace lrdcp
