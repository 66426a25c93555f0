// seqsem command-line front end. `run` is separate from main so tests can
// drive it with in-memory streams.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqsem/seqsem.hpp"

namespace seqsem::cli {

inline constexpr const char* kSchema = "seqsem/1";

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kUsageError = 2;

/// A usage problem found after argument parsing (missing --seed, ...).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed 9 significant digits.
inline std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

inline nlohmann::json jnum(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::stod(num(x));
}

inline nlohmann::json jsummary(const Summary& s) {
    return {{"count", s.count}, {"mean", jnum(s.mean)}, {"q1", jnum(s.q1)}, {"median", jnum(s.median)}, {"q3", jnum(s.q3)}};
}

struct Options {
    std::string params_path;
    std::optional<double> temperature;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool json = false;

    std::string structure_path;
    std::string sequence_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> count;
    std::vector<int> interval;
    std::string pattern;
    bool tables = false;
    std::string format = "fasta";
    int max_interior = 30;
    bool exact = false;
    int window = 0;
    std::string out_path;
    std::string pgm_path;
    double saturate = 0.59;
    std::string patterns_path;
    std::size_t top = 10;
    double threshold = 0.52;
    std::size_t baselines = 5;
    std::string spectrum_path;
    double bin_width = kDefaultBinWidth;
    bool find_triple = false;
    double tolerance = 0.05;
    double max_identity = 0.5;
    int length = 0;
    bool count_only = false;
};

class Runner {
public:
    Runner(const Options& o, std::istream& in, std::ostream& out, std::ostream& err)
        : opt_(o), in_(in), out_(out), err_(err) {}

    int dispatch(const std::string& command) {
        load_params();
        if (command == "partition") return partition();
        if (command == "pattern") return pattern();
        if (command == "sample") return sample_cmd();
        if (command == "fold") return fold();
        if (command == "seqpf") return seqpf();
        if (command == "heatmap") return heatmap();
        if (command == "signature") return signature_cmd();
        if (command == "mi") return mi();
        if (command == "random-structures") return random_structures();
        throw UsageError("unknown command " + command);
    }

private:
    const Options& opt_;
    std::istream& in_;
    std::ostream& out_;
    std::ostream& err_;
    EnergyParams params_;

    void load_params() {
        params_ = opt_.params_path.empty() ? default_energy_params() : load_energy_params(opt_.params_path);
        if (opt_.temperature) params_.temperature_kelvin = *opt_.temperature;
    }

    std::string slurp(const std::string& path) {
        if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
        std::ifstream f(path, std::ios::binary);
        if (!f) throw InputError("cannot open " + path);
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }

    SecondaryStructure structure() { return read_structure(slurp(opt_.structure_path)); }
    std::vector<NamedSequence> sequences() { return read_fasta(slurp(opt_.sequence_path)); }

    nlohmann::json header(const std::string& command) const {
        return {{"schema", kSchema},
                {"command", command},
                {"params", params_.checksum},
                {"temperature_kelvin", jnum(params_.temperature_kelvin)}};
    }

    std::uint64_t require_seed(const char* command) const {
        if (!opt_.seed) throw UsageError(std::string(command) + " draws random samples and needs --seed");
        return *opt_.seed;
    }

    void emit(const nlohmann::json& j) { out_ << j.dump(2) << '\n'; }

    int partition() {
        const SecondaryStructure s = structure();
        const SequencePartition pf = partition_function(params_, s, PatternConstraint(s.size()), false);
        if (!opt_.json) {
            out_ << num(pf.log_q()) << '\n';
            return kOk;
        }
        nlohmann::json j = header("partition");
        j["structure"] = to_dot_bracket(s);
        j["log_q"] = jnum(pf.log_q());
        if (opt_.tables) {
            nlohmann::json tables = nlohmann::json::array();
            for (const ArcTable& t : pf.arc_tables()) {
                nlohmann::json w = nlohmann::json::array();
                for (LogWeight x : t.weights) w.push_back(jnum(x.log()));
                tables.push_back({{"i", t.arc.i}, {"j", t.arc.j}, {"log_weights", w}});
            }
            j["arc_tables"] = tables;
        }
        emit(j);
        return kOk;
    }

    /// IUPAC codes to allowed-nucleotide masks (bit k = nucleotide code k).
    static std::uint8_t mask_of(char c) {
        switch (std::toupper(static_cast<unsigned char>(c))) {
            case 'A': return 0b0001;
            case 'C': return 0b0010;
            case 'G': return 0b0100;
            case 'U': case 'T': return 0b1000;
            case 'R': return 0b0101;
            case 'Y': return 0b1010;
            case 'S': return 0b0110;
            case 'W': return 0b1001;
            case 'K': return 0b1100;
            case 'M': return 0b0011;
            case 'B': return 0b1110;
            case 'D': return 0b1101;
            case 'H': return 0b1011;
            case 'V': return 0b0111;
            case 'N': return 0b1111;
            default: return 0;
        }
    }

    int pattern() {
        const SecondaryStructure s = structure();
        const int first = opt_.interval.at(0), last = opt_.interval.at(1);
        if (first < 1 || last > s.size() || first > last)
            throw InputError("interval [" + std::to_string(first) + "," + std::to_string(last) + "] outside 1.." +
                             std::to_string(s.size()));
        if (static_cast<int>(opt_.pattern.size()) != last - first + 1)
            throw InputError("pattern length " + std::to_string(opt_.pattern.size()) + " does not match the interval width " +
                             std::to_string(last - first + 1));
        std::vector<std::uint8_t> allowed(static_cast<std::size_t>(s.size()), PatternConstraint::kAny);
        for (int k = 0; k < static_cast<int>(opt_.pattern.size()); ++k) {
            const std::uint8_t m = mask_of(opt_.pattern[static_cast<std::size_t>(k)]);
            if (!m) throw InputError(std::string("illegal pattern character '") + opt_.pattern[static_cast<std::size_t>(k)] + "'", 0, k + 1);
            allowed[static_cast<std::size_t>(first - 1 + k)] = m;
        }
        const PatternConstraint c = PatternConstraint::from_mask(allowed);
        const double lq = partition_function(params_, s, PatternConstraint(s.size()), false).log_q();
        const double lqp = pattern_partition(params_, s, c);
        const double prob = std::exp(lqp - lq);
        if (!opt_.json) {
            out_ << num(lqp) << '\t' << num(prob) << '\n';
            return kOk;
        }
        nlohmann::json j = header("pattern");
        j["structure"] = to_dot_bracket(s);
        j["interval"] = {first, last};
        j["pattern"] = opt_.pattern;
        j["log_q"] = jnum(lq);
        j["log_q_pattern"] = jnum(lqp);
        j["probability"] = jnum(prob);
        emit(j);
        return kOk;
    }

    std::vector<SampledSequence> draw(const SequencePartition& pf, std::uint64_t seed) {
        return sample_ensemble(params_, pf, opt_.count.value_or(1), seed, opt_.threads);
    }

    int sample_cmd() {
        const std::uint64_t seed = require_seed("sample");
        const SecondaryStructure s = structure();
        const SequencePartition pf = partition_function(params_, s);
        const auto ensemble = draw(pf, seed);
        if (opt_.format == "jsonl") {
            for (std::size_t k = 0; k < ensemble.size(); ++k) {
                nlohmann::json j{{"schema", kSchema},
                                 {"index", k},
                                 {"sequence", to_string(ensemble[k].sequence)},
                                 {"energy", jnum(ensemble[k].energy.kcal())},
                                 {"log_prob", jnum(ensemble[k].log_prob)}};
                out_ << j.dump() << '\n';
            }
            return kOk;
        }
        for (std::size_t k = 0; k < ensemble.size(); ++k)
            out_ << ">sample" << (k + 1) << " energy=" << num(ensemble[k].energy.kcal())
                 << " log_prob=" << num(ensemble[k].log_prob) << '\n'
                 << to_string(ensemble[k].sequence) << '\n';
        return kOk;
    }

    FoldOptions fold_options() const { return {opt_.max_interior}; }

    int fold() {
        const auto records = sequences();
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : records) {
            const FoldResult f = mfe_fold(params_, r.sequence, fold_options());
            if (opt_.json) {
                arr.push_back({{"name", r.name},
                               {"sequence", to_string(r.sequence)},
                               {"structure", to_dot_bracket(f.structure)},
                               {"energy", jnum(f.energy.kcal())}});
            } else {
                out_ << '>' << r.name << '\n'
                     << to_string(r.sequence) << '\n'
                     << to_dot_bracket(f.structure) << " (" << num(f.energy.kcal()) << ")\n";
            }
        }
        if (opt_.json) {
            nlohmann::json j = header("fold");
            j["results"] = arr;
            emit(j);
        }
        return kOk;
    }

    int seqpf() {
        const auto records = sequences();
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : records) {
            const double lq = mccaskill_partition(params_, r.sequence, fold_options()).log_q_sigma;
            if (opt_.json)
                arr.push_back({{"name", r.name}, {"sequence", to_string(r.sequence)}, {"log_q_sigma", jnum(lq)}});
            else
                out_ << r.name << '\t' << num(lq) << '\n';
        }
        if (opt_.json) {
            nlohmann::json j = header("seqpf");
            j["results"] = arr;
            emit(j);
        }
        return kOk;
    }

    std::ostream& open_out(const std::string& path, std::ofstream& file) {
        if (path.empty() || path == "-") return out_;
        file.open(path, std::ios::binary);
        if (!file) throw InputError("cannot write " + path);
        return file;
    }

    int heatmap() {
        if (opt_.exact == opt_.count.has_value()) throw UsageError("heatmap needs exactly one of -n COUNT or --exact");
        const SecondaryStructure s = structure();
        std::optional<HeatMap> map;
        std::vector<Sequence> seqs;
        if (opt_.exact) {
            map = exact_heat_map(params_, s, opt_.window ? opt_.window : kExactWindow);
        } else {
            const std::uint64_t seed = require_seed("heatmap");
            const SequencePartition pf = partition_function(params_, s);
            for (auto& x : draw(pf, seed)) seqs.push_back(std::move(x.sequence));
            map = heat_map(std::span<const Sequence>(seqs), s.size(), opt_.window ? opt_.window : kSampledWindow);
        }
        std::ofstream csv_file;
        std::ostream& csv = open_out(opt_.out_path, csv_file);
        for (int i = 1; i <= map->size(); ++i) {
            for (int j = 1; j <= map->size(); ++j) {
                if (j > 1) csv << ',';
                if (map->in_window(i, j)) csv << num(map->at(i, j));
            }
            csv << '\n';
        }
        if (!opt_.pgm_path.empty()) {
            std::ofstream pgm(opt_.pgm_path, std::ios::binary);
            if (!pgm) throw InputError("cannot write " + opt_.pgm_path);
            pgm << "P2\n" << map->size() << ' ' << map->size() << "\n255\n";
            for (int i = 1; i <= map->size(); ++i) {
                for (int j = 1; j <= map->size(); ++j) {
                    int gray = 255;
                    if (map->in_window(i, j))
                        gray = static_cast<int>(std::lround(255.0 * (1.0 - std::min(1.0, map->at(i, j) / opt_.saturate))));
                    pgm << gray << (j == map->size() ? '\n' : ' ');
                }
            }
        }
        if (!opt_.patterns_path.empty()) {
            if (opt_.exact) throw UsageError("--patterns reports sampled frequencies and needs -n COUNT");
            std::ofstream rep(opt_.patterns_path, std::ios::binary);
            if (!rep) throw InputError("cannot write " + opt_.patterns_path);
            const auto hot = hottest_interval(*map, opt_.threshold);
            rep << "# interval";
            if (hot) rep << ' ' << hot->first << ' ' << hot->last;
            rep << "\npattern\tfrequency\tprobability\tstandard_error\n";
            if (hot)
                for (const auto& r : top_patterns(params_, s, seqs, hot->first, hot->last, opt_.top))
                    rep << to_string(r.pattern) << '\t' << num(r.frequency) << '\t' << num(r.probability) << '\t'
                        << num(r.standard_error) << '\n';
        }
        return kOk;
    }

    static nlohmann::json jsignature(const EnsembleSignature& e) {
        nlohmann::json d = nlohmann::json::array();
        for (double x : e.delta_etas) d.push_back(jnum(x));
        return {{"structure", to_dot_bracket(e.structure)},
                {"ifr", jnum(e.ifr)},
                {"refolded", e.refolded},
                {"delta_eta", jsummary(e.delta_eta_summary)},
                {"delta_etas", d}};
    }

    int signature_cmd() {
        const std::uint64_t seed = require_seed("signature");
        if (!opt_.count) throw UsageError("signature needs -n COUNT");
        const SecondaryStructure s = structure();
        const SequencePartition pf = partition_function(params_, s);
        std::vector<double> energies;
        std::vector<Sequence> seqs;
        for (auto& x : draw(pf, seed)) {
            energies.push_back(x.energy.kcal());
            seqs.push_back(std::move(x.sequence));
        }
        const SignatureReport r = signature(params_, s, seqs, opt_.baselines, seed, opt_.threads, fold_options());
        const EnergySpectrum spec = energy_spectrum(energies, r.target.refolds, opt_.bin_width);
        if (!opt_.spectrum_path.empty()) {
            std::ofstream f(opt_.spectrum_path, std::ios::binary);
            if (!f) throw InputError("cannot write " + opt_.spectrum_path);
            f << "bin_start\tall\trefolded\n";
            for (std::size_t b = 0; b < spec.all.size(); ++b)
                f << num(spec.bin_start(b)) << '\t' << spec.all[b] << '\t' << spec.refolded[b] << '\n';
        }
        if (!opt_.json) {
            auto line = [&](const std::string& label, const EnsembleSignature& e) {
                out_ << label << '\t' << to_dot_bracket(e.structure) << "\tifr=" << num(e.ifr)
                     << "\tdelta_eta_median=" << num(e.delta_eta_summary.median) << "\tq1=" << num(e.delta_eta_summary.q1)
                     << "\tq3=" << num(e.delta_eta_summary.q3) << '\n';
            };
            line("target", r.target);
            for (std::size_t b = 0; b < r.baselines.size(); ++b) line("baseline" + std::to_string(b + 1), r.baselines[b]);
            out_ << "baseline_mean_ifr\t" << num(r.baseline_ifr) << "\nbaseline_delta_eta_median\t"
                 << num(r.baseline_delta_eta_summary.median) << '\n';
            return kOk;
        }
        nlohmann::json j = header("signature");
        j["seed"] = seed;
        j["count"] = seqs.size();
        j["target"] = jsignature(r.target);
        nlohmann::json bl = nlohmann::json::array();
        for (const auto& b : r.baselines) bl.push_back(jsignature(b));
        j["baselines"] = bl;
        j["baseline_ifr"] = jnum(r.baseline_ifr);
        j["baseline_delta_eta"] = jsummary(r.baseline_delta_eta_summary);
        j["spectrum"] = {{"bin_width", jnum(spec.bin_width)},
                         {"first_bin_start", jnum(spec.bin_start(0))},
                         {"all", spec.all},
                         {"refolded", spec.refolded}};
        emit(j);
        return kOk;
    }

    int mi() {
        const SecondaryStructure s = structure();
        const auto records = sequences();
        const double lqs = partition_function(params_, s, PatternConstraint(s.size()), false).log_q();
        nlohmann::json arr = nlohmann::json::array();
        if (!opt_.json) out_ << "# unnormalized dominant term\n#name\teta\tlog_q_s\tlog_q_sigma\tlog_magnitude\tsign\tvalue\n";
        std::vector<Sequence> seqs;
        for (const auto& r : records) {
            if (static_cast<int>(r.sequence.size()) != s.size())
                throw InputError("sequence '" + r.name + "' has length " + std::to_string(r.sequence.size()) +
                                 ", structure has " + std::to_string(s.size()));
            seqs.push_back(r.sequence);
            const Energy eta = structure_energy(params_, r.sequence, s);
            const double lqsig = mccaskill_partition(params_, r.sequence, fold_options()).log_q_sigma;
            const MIScore m = mi_score(eta, params_.rt(), lqs, lqsig);
            if (opt_.json) {
                arr.push_back({{"name", r.name},
                               {"eta", jnum(eta.kcal())},
                               {"log_q_sigma", jnum(lqsig)},
                               {"log_magnitude", jnum(m.log_magnitude)},
                               {"sign", m.sign},
                               {"value", jnum(m.value())}});
            } else {
                out_ << r.name << '\t' << num(eta.kcal()) << '\t' << num(lqs) << '\t' << num(lqsig) << '\t'
                     << num(m.log_magnitude) << '\t' << m.sign << '\t' << num(m.value()) << '\n';
            }
        }
        std::optional<DiverseTriple> triple;
        if (opt_.find_triple)
            triple = find_diverse_equal_mi(params_, s, seqs, lqs, opt_.tolerance, opt_.max_identity, fold_options());
        if (opt_.json) {
            nlohmann::json j = header("mi");
            j["note"] = "unnormalized dominant term";
            j["structure"] = to_dot_bracket(s);
            j["log_q_s"] = jnum(lqs);
            j["results"] = arr;
            if (opt_.find_triple) {
                j["triple"] = nullptr;
                if (triple) j["triple"] = {records[triple->members[0]].name, records[triple->members[1]].name,
                                           records[triple->members[2]].name};
            }
            emit(j);
        } else if (opt_.find_triple) {
            out_ << "# triple";
            if (triple)
                for (std::size_t k : triple->members) out_ << '\t' << records[k].name;
            else
                out_ << "\tnone";
            out_ << '\n';
        }
        return kOk;
    }

    int random_structures() {
        if (opt_.length < 0) throw InputError("length must be non-negative");
        StructureCounter counter(opt_.length);
        if (opt_.count_only) {
            out_ << counter.count(opt_.length) << '\n';
            return kOk;
        }
        const std::uint64_t seed = require_seed("random-structures");
        for (std::size_t k = 0; k < opt_.count.value_or(1); ++k) {
            Rng rng = substream(seed, k);
            out_ << to_dot_bracket(counter.sample(opt_.length, rng)) << '\n';
        }
        return kOk;
    }
};

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Sequence ensembles of a fixed RNA secondary structure", "seqsem"};
    app.require_subcommand(1);
    auto common = [&](CLI::App* sub) {
        sub->add_option("--params", o.params_path, "parameter file (default: built-in set)");
        sub->add_option("--temperature", o.temperature, "temperature in Kelvin")->check(CLI::PositiveNumber);
        sub->add_option("--threads", o.threads, "worker threads; never changes output")->check(CLI::PositiveNumber);
        sub->add_flag("--json", o.json, "JSON output");
    };
    auto structure_arg = [&](CLI::App* sub) {
        sub->add_option("structure", o.structure_path, "dot-bracket or pair-list file; '-' or absent reads stdin");
    };
    auto max_interior = [&](CLI::App* sub) {
        sub->add_option("--max-interior", o.max_interior, "bulge/interior loop size cap for folding")
            ->check(CLI::NonNegativeNumber);
    };

    CLI::App* partition = app.add_subcommand("partition", "log Q(S) over all sequences");
    common(partition);
    structure_arg(partition);
    partition->add_flag("--tables", o.tables, "include per-arc 4x4 log tables (with --json)");

    CLI::App* pattern = app.add_subcommand("pattern", "log Q(S|p) and P(p|S)");
    common(pattern);
    structure_arg(pattern);
    pattern->add_option("--interval", o.interval, "first and last position (1-based)")->expected(2)->required();
    pattern->add_option("--pattern", o.pattern, "nucleotides or IUPAC codes")->required();

    CLI::App* sample = app.add_subcommand("sample", "Boltzmann-sample sequences");
    common(sample);
    structure_arg(sample);
    sample->add_option("-n,--count", o.count, "number of sequences")->check(CLI::PositiveNumber);
    sample->add_option("--seed", o.seed, "random seed")->required();
    sample->add_option("--format", o.format, "fasta or jsonl")->check(CLI::IsMember({"fasta", "jsonl"}));

    CLI::App* fold = app.add_subcommand("fold", "minimum free energy structure");
    common(fold);
    fold->add_option("sequences", o.sequence_path, "FASTA file; '-' or absent reads stdin");
    max_interior(fold);

    CLI::App* seqpf = app.add_subcommand("seqpf", "log Q(sigma) over all structures");
    common(seqpf);
    seqpf->add_option("sequences", o.sequence_path, "FASTA file; '-' or absent reads stdin");
    max_interior(seqpf);

    CLI::App* heat = app.add_subcommand("heatmap", "entropy heat map R(i,j)");
    common(heat);
    structure_arg(heat);
    heat->add_option("-n,--count", o.count, "ensemble size (sampled mode)")->check(CLI::PositiveNumber);
    heat->add_flag("--exact", o.exact, "exact pattern probabilities");
    heat->add_option("--window", o.window, "largest interval width")->check(CLI::PositiveNumber);
    heat->add_option("--seed", o.seed, "random seed (sampled mode)");
    heat->add_option("--out", o.out_path, "CSV path; '-' or absent writes stdout");
    heat->add_option("--pgm", o.pgm_path, "grayscale PGM path");
    heat->add_option("--saturate", o.saturate, "heat rendered as black")->check(CLI::PositiveNumber);
    heat->add_option("--patterns", o.patterns_path, "top-pattern report for the widest hot interval");
    heat->add_option("--top", o.top, "patterns in the report");
    heat->add_option("--threshold", o.threshold, "heat above which an interval is hot");

    CLI::App* sig = app.add_subcommand("signature", "IFR and delta-eta against random structures");
    common(sig);
    structure_arg(sig);
    sig->add_option("-n,--count", o.count, "ensemble size")->check(CLI::PositiveNumber);
    sig->add_option("--baselines", o.baselines, "number of random structures");
    sig->add_option("--seed", o.seed, "random seed")->required();
    sig->add_option("--spectrum", o.spectrum_path, "energy histogram TSV path");
    sig->add_option("--bin-width", o.bin_width, "histogram bin width, kcal/mol")->check(CLI::PositiveNumber);
    max_interior(sig);

    CLI::App* mi = app.add_subcommand("mi", "unnormalized dominant mutual-information term");
    common(mi);
    mi->add_option("structure", o.structure_path, "structure file")->required();
    mi->add_option("sequences", o.sequence_path, "FASTA file; '-' or absent reads stdin");
    mi->add_flag("--find-triple", o.find_triple, "search for three diverse sequences with near-equal scores");
    mi->add_option("--tolerance", o.tolerance, "relative score difference")->check(CLI::PositiveNumber);
    mi->add_option("--max-identity", o.max_identity, "pairwise identity bound")->check(CLI::PositiveNumber);
    max_interior(mi);

    CLI::App* rs = app.add_subcommand("random-structures", "uniformly random secondary structures");
    common(rs);
    rs->add_option("length", o.length, "structure length")->required()->check(CLI::NonNegativeNumber);
    rs->add_option("-n,--count", o.count, "number of structures")->check(CLI::PositiveNumber);
    rs->add_option("--seed", o.seed, "random seed");
    rs->add_flag("--count-only", o.count_only, "print the number of structures instead");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    std::string command;
    for (CLI::App* sub : app.get_subcommands()) command = sub->get_name();
    try {
        Runner runner(o, in, out, err);
        return runner.dispatch(command);
    } catch (const UsageError& e) {
        err << "seqsem " << command << ": " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "seqsem " << command << ": error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace seqsem::cli
