#include "specshare/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "specshare/baselines.hpp"
#include "specshare/joint.hpp"
#include "specshare/unilateral.hpp"

namespace specshare {

namespace {

constexpr const char* kCsvHeader =
    "trial,method,sweep_param,sweep_value,sinr_linear,sinr_db,throughput,outer_iters,status";

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SolveReport run_method(const ChannelRealization& ch, const Constraints& cons,
                       const SystemConfig& cfg, Method m) {
    switch (m) {
        case Method::Joint:
            return solve_joint(ch, cons, cfg);
        case Method::Unilateral: {
            UnilateralProblem prob{ch, cons, waterfill_comm(ch, cons)};
            return solve_unilateral(prob, cfg);
        }
        case Method::Greedy:
            return greedy_search(ch, cons, cfg).report;
        case Method::CommAbsent:
            return comm_absent_optimum(ch, cons, cfg);
    }
    throw std::logic_error("unknown method");
}

// Emission-time re-validation of the tolerances promised by every solver.
bool allocation_valid(const Constraints& cons, Method m, const SolveReport& rep) {
    double radar_sum = 0.0, comm_sum = 0.0;
    for (double v : rep.allocation.radar) {
        if (v < -1e-9 || v > cons.peak_radar + 1e-9) return false;
        radar_sum += v;
    }
    for (double v : rep.allocation.comm) {
        if (v < -1e-9 || v > cons.peak_comm + 1e-9) return false;
        comm_sum += v;
    }
    if (radar_sum > cons.total_radar_power + 1e-6) return false;
    if (comm_sum > cons.total_comm_power + 1e-6) return false;
    if (m != Method::CommAbsent && rep.throughput < cons.throughput_floor - 1e-6) return false;
    return true;
}

ExperimentRecord make_record(int trial, Method m, const Constraints& cons,
                             const SolveReport& rep) {
    ExperimentRecord r;
    r.trial = trial;
    r.method = m;
    r.sinr_linear = rep.sinr;
    r.sinr_db = rep.sinr > 0.0 ? 10.0 * std::log10(rep.sinr)
                               : -std::numeric_limits<double>::infinity();
    r.throughput = rep.throughput;
    r.outer_iters = rep.outer_iters;
    switch (rep.status) {
        case SolveOutcome::Converged:
            r.status = "converged";
            break;
        case SolveOutcome::MaxIters:
            r.status = "max_iters";
            break;
        case SolveOutcome::Infeasible:
            r.status = "infeasible";
            break;
    }
    if (rep.status != SolveOutcome::Infeasible && !allocation_valid(cons, m, rep)) {
        r.status = "invalid";
    }
    return r;
}

SystemConfig with_param(const SystemConfig& cfg, const std::string& param, double value) {
    SystemConfig out = cfg;
    if (param == "pr") {
        out.P_r = value;
        if (!out.xi_r_explicit) out.xi_r = 4.0 * value / out.n_subcarriers;
    } else if (param == "pc") {
        out.P_c = value;
        if (!out.xi_c_explicit) out.xi_c = 4.0 * value / out.n_subcarriers;
    } else if (param == "kappa") {
        out.kappa = value;
    } else {
        throw ConfigError("unknown sweep parameter: " + param);
    }
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw std::runtime_error("bad numeric field in CSV: " + s);
    }
    return v;
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::Joint:
            return "joint";
        case Method::Unilateral:
            return "unilateral";
        case Method::Greedy:
            return "greedy";
        case Method::CommAbsent:
            return "comm_absent";
    }
    throw std::logic_error("unknown method");
}

Method method_from_name(const std::string& name) {
    if (name == "joint") return Method::Joint;
    if (name == "unilateral") return Method::Unilateral;
    if (name == "greedy") return Method::Greedy;
    if (name == "comm_absent" || name == "comm-absent") return Method::CommAbsent;
    throw ConfigError("unknown method name: " + name);
}

std::vector<ExperimentRecord> run_trials(const SystemConfig& cfg,
                                         const std::vector<Method>& methods, int threads) {
    const Constraints cons = cfg.constraints();
    std::vector<std::vector<ExperimentRecord>> slots(cfg.trials);
    auto work = [&](int trial) {
        const ChannelRealization ch = generate_channels(cfg, trial);
        for (Method m : methods) {
            slots[trial].push_back(make_record(trial, m, cons, run_method(ch, cons, cfg, m)));
        }
    };

    const int pool_size = std::max(1, std::min(threads, cfg.trials));
    if (pool_size <= 1) {
        for (int t = 0; t < cfg.trials; ++t) work(t);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(pool_size);
        for (int k = 0; k < pool_size; ++k) {
            pool.emplace_back([&] {
                while (true) {
                    const int t = next.fetch_add(1);
                    if (t >= cfg.trials) break;
                    work(t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<ExperimentRecord> records;
    records.reserve(static_cast<std::size_t>(cfg.trials) * methods.size());
    for (auto& slot : slots) {
        for (auto& r : slot) records.push_back(std::move(r));
    }
    return records;
}

std::vector<ExperimentRecord> sweep(const SystemConfig& cfg, const std::string& param,
                                    const std::vector<double>& values,
                                    const std::vector<Method>& methods, int threads) {
    if (values.empty()) throw ConfigError("sweep: empty value list");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<ExperimentRecord> records;
    for (double v : sorted) {
        const SystemConfig sub = with_param(cfg, param, v);
        std::vector<ExperimentRecord> batch = run_trials(sub, methods, threads);
        for (auto& r : batch) {
            r.sweep_param = param;
            r.sweep_value = fmt_double(v);
            records.push_back(std::move(r));
        }
    }
    return records;
}

std::vector<ExperimentRecord> contour_grid(const SystemConfig& cfg,
                                           const std::vector<double>& pr_values,
                                           const std::vector<double>& pc_values,
                                           const std::vector<Method>& methods, int threads) {
    if (pr_values.empty() || pc_values.empty()) throw ConfigError("contour: empty grid axis");
    std::vector<double> prs = pr_values, pcs = pc_values;
    std::sort(prs.begin(), prs.end());
    std::sort(pcs.begin(), pcs.end());
    std::vector<ExperimentRecord> records;
    for (double pr : prs) {
        for (double pc : pcs) {
            const SystemConfig sub = with_param(with_param(cfg, "pr", pr), "pc", pc);
            std::vector<ExperimentRecord> batch = run_trials(sub, methods, threads);
            for (auto& r : batch) {
                r.sweep_param = "pr|pc";
                r.sweep_value = fmt_double(pr) + "|" + fmt_double(pc);
                records.push_back(std::move(r));
            }
        }
    }
    return records;
}

ProfileResult allocation_profile(const ChannelRealization& ch, const Constraints& cons,
                                 const SystemConfig& cfg, const std::vector<Method>& methods) {
    ProfileResult res;
    res.ch = ch;
    res.methods = methods;
    res.reports.reserve(methods.size());
    for (Method m : methods) res.reports.push_back(run_method(ch, cons, cfg, m));
    return res;
}

void write_records_csv(const std::string& path, const std::vector<ExperimentRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.trial << ',' << method_name(r.method) << ',' << r.sweep_param << ','
            << r.sweep_value << ',' << fmt_double(r.sinr_linear) << ',' << fmt_double(r.sinr_db)
            << ',' << fmt_double(r.throughput) << ',' << r.outer_iters << ',' << r.status << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<ExperimentRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("unexpected CSV header in " + path);
    }
    std::vector<ExperimentRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 9) throw std::runtime_error("malformed CSV row: " + line);
        ExperimentRecord r;
        r.trial = static_cast<int>(parse_double(f[0]));
        r.method = method_from_name(f[1]);
        r.sweep_param = f[2];
        r.sweep_value = f[3];
        r.sinr_linear = parse_double(f[4]);
        r.sinr_db = parse_double(f[5]);
        r.throughput = parse_double(f[6]);
        r.outer_iters = static_cast<int>(parse_double(f[7]));
        r.status = f[8];
        records.push_back(std::move(r));
    }
    return records;
}

void write_profile_csv(const std::string& path, const ProfileResult& result) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "method,subcarrier,gamma_rr,gamma_cc,p_r,p_c,sinr_db,throughput\n";
    for (std::size_t k = 0; k < result.methods.size(); ++k) {
        const SolveReport& rep = result.reports[k];
        const double db = rep.sinr > 0.0 ? 10.0 * std::log10(rep.sinr)
                                         : -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < result.ch.size(); ++i) {
            out << method_name(result.methods[k]) << ',' << i << ','
                << fmt_double(result.ch.gamma_rr[i]) << ',' << fmt_double(result.ch.gamma_cc[i])
                << ',' << fmt_double(rep.allocation.radar[i]) << ','
                << fmt_double(rep.allocation.comm[i]) << ',' << fmt_double(db) << ','
                << fmt_double(rep.throughput) << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_records_json(const std::string& path, const SystemConfig& cfg,
                        const std::vector<ExperimentRecord>& records) {
    nlohmann::json doc;
    doc["config"] = {
        {"n_subcarriers", cfg.n_subcarriers},
        {"sigma_rr2", cfg.sigma_rr2},
        {"sigma_cc2", cfg.sigma_cc2},
        {"sigma_rc2", cfg.sigma_rc2},
        {"sigma_cr2", cfg.sigma_cr2},
        {"sigma_clutter2", cfg.sigma_clutter2},
        {"noise_r2", cfg.noise_r2},
        {"noise_c2", cfg.noise_c2},
        {"P_r", cfg.P_r},
        {"P_c", cfg.P_c},
        {"xi_r", cfg.xi_r},
        {"xi_c", cfg.xi_c},
        {"kappa", cfg.kappa},
        {"tolerance", cfg.tolerance},
        {"max_outer_iters", cfg.max_outer_iters},
        {"max_inner_iters", cfg.max_inner_iters},
        {"trials", cfg.trials},
        {"seed", cfg.seed},
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json row = {
            {"trial", r.trial},
            {"method", method_name(r.method)},
            {"sweep_param", r.sweep_param},
            {"sweep_value", r.sweep_value},
            {"sinr_linear", r.sinr_linear},
            {"throughput", r.throughput},
            {"outer_iters", r.outer_iters},
            {"status", r.status},
        };
        if (std::isfinite(r.sinr_db)) {
            row["sinr_db"] = r.sinr_db;
        } else {
            row["sinr_db"] = "-inf";
        }
        rows.push_back(std::move(row));
    }
    doc["records"] = std::move(rows);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::map<Method, MethodSummary> summarize(const std::vector<ExperimentRecord>& records) {
    std::map<Method, MethodSummary> out;
    std::map<Method, int> db_count;
    std::map<Method, int> thr_count;
    for (const auto& r : records) {
        MethodSummary& s = out[r.method];
        ++s.total;
        if (r.status == "infeasible") {
            ++s.infeasible;
            continue;
        }
        if (r.status == "converged") ++s.converged;
        if (r.sinr_linear > 0.0) {
            s.mean_sinr_db += r.sinr_db;
            ++db_count[r.method];
        }
        s.mean_throughput += r.throughput;
        ++thr_count[r.method];
    }
    for (auto& [m, s] : out) {
        if (db_count[m] > 0) s.mean_sinr_db /= db_count[m];
        if (thr_count[m] > 0) s.mean_throughput /= thr_count[m];
    }
    return out;
}

}  // namespace specshare
