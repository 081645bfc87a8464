#include "fuglede/cli.hpp"

#include "fuglede/error.hpp"
#include "fuglede/exact_sums.hpp"
#include "fuglede/io.hpp"
#include "fuglede/lemmas.hpp"
#include "fuglede/spectral.hpp"
#include "fuglede/tiling.hpp"
#include "fuglede/verifier.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fuglede {

namespace {

constexpr const char* kCertDirEnv = "FUGLEDE_CERT_DIR";

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string set_text(const GroupSpec& g, const SubsetMask& s)
{
    std::string out = "[";
    bool first = true;
    for (auto i : s.indices()) {
        out += (first ? "" : ",") + to_string(g.element(i));
        first = false;
    }
    return out + "]";
}

// Certificates go to --certs, else to $FUGLEDE_CERT_DIR/certificates.jsonl, else nowhere.
class CertificateSink {
public:
    explicit CertificateSink(const std::string& explicit_path)
    {
        if (!explicit_path.empty()) {
            path_ = explicit_path;
        } else if (const char* dir = std::getenv(kCertDirEnv); dir && *dir) {
            path_ = (std::filesystem::path(dir) / "certificates.jsonl").string();
        }
    }

    void append(const CertificateRecord& rec)
    {
        if (path_.empty())
            return;
        std::ofstream out(path_, std::ios::app);
        if (!out)
            throw Error("cannot append certificates to " + path_);
        out << to_json_line(rec) << "\n";
    }

private:
    std::string path_;
};

SubsetMask require_set(const SetFile& f, const std::string& command)
{
    if (f.is_multiset())
        throw Error(command + " needs a set file, not a multiset");
    const auto& s = std::get<SubsetMask>(f.contents);
    if (s.empty())
        throw Error(command + " needs a nonempty set");
    return s;
}

std::pair<std::uint32_t, std::uint32_t> parse_pair(const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw Error("--a expects u1,u2");
    try {
        return {static_cast<std::uint32_t>(std::stoul(text.substr(0, comma))),
            static_cast<std::uint32_t>(std::stoul(text.substr(comma + 1)))};
    } catch (const std::exception&) {
        throw Error("--a expects u1,u2 with nonnegative integers, got " + text);
    }
}

void print_matrix(std::ostream& out, const CoefficientMatrix& c)
{
    for (std::uint32_t j = 0; j < c.rows(); ++j) {
        out << "  ";
        for (std::uint32_t k = 0; k < c.cols(); ++k)
            out << (k ? " " : "") << c(j, k);
        out << "\n";
    }
}

std::string vector_text(const std::vector<std::int64_t>& v)
{
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out + "]";
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectral sets and tiles of Z_p^2 x Z_q"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    std::string file;
    std::string certs;

    auto* check = app.add_subcommand("check", "decide spectrality and tiling of a set, with witnesses");
    check->add_option("file", file, "set file")->required();
    check->add_option("--certs", certs, "append certificates to this JSON-lines file");

    auto* spectrum = app.add_subcommand("spectrum", "search for a spectrum");
    spectrum->add_option("file", file, "set file")->required();
    spectrum->add_option("--certs", certs, "append certificates to this JSON-lines file");

    auto* complement = app.add_subcommand("complement", "search for a tiling complement");
    complement->add_option("file", file, "set file")->required();
    complement->add_option("--certs", certs, "append certificates to this JSON-lines file");

    auto* zeroset = app.add_subcommand("zeroset", "list the nonzero characters vanishing on a set or multiset");
    zeroset->add_option("file", file, "set file")->required();

    std::string a_text;
    std::uint32_t b = 0;
    auto* projection = app.add_subcommand("project", "project a multiset along (a, b)");
    projection->add_option("file", file, "set file")->required();
    projection->add_option("--a", a_text, "direction u1,u2 in Z_p^2")->required();
    projection->add_option("--b", b, "nonzero residue mod q")->required();

    auto* decompose = app.add_subcommand("decompose", "coset decomposition of a p x q exponent matrix");
    decompose->add_option("file", file, "matrix file")->required();

    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::uint64_t seed = 1;
    std::uint64_t samples = 0;
    std::uint32_t size = 0;
    unsigned threads = 0;
    bool no_orbits = false;
    bool as_json = false;
    auto* verify = app.add_subcommand("verify", "check spectral <=> tile over many subsets");
    verify->add_option("--p", p, "prime p")->required();
    verify->add_option("--q", q, "prime q")->required();
    auto* exhaustive_flag = verify->add_flag("--exhaustive", "scan every subset up to symmetry");
    auto* samples_opt = verify->add_option("--samples", samples, "number of random subsets");
    verify->add_option("--seed", seed, "master seed for sampling")->needs(samples_opt);
    auto* size_opt = verify->add_option("--size", size, "only subsets of this size");
    verify->add_option("--threads", threads, "worker threads (0 = all cores)");
    verify->add_flag("--no-orbits", no_orbits, "exhaustive: scan every subset instead of orbit representatives")
        ->needs(exhaustive_flag);
    verify->add_flag("--json", as_json, "print the report as JSON");
    verify->add_option("--certs", certs, "append violation certificates to this JSON-lines file");
    exhaustive_flag->excludes(samples_opt);
    verify->callback([&] {
        if (!exhaustive_flag->count() && !samples_opt->count())
            throw CLI::ValidationError("verify", "one of --exhaustive or --samples N is required");
    });

    std::uint64_t trials = 0;
    auto* lemmas = app.add_subcommand("lemmas", "randomized checks of the harmonic-analysis lemmas");
    lemmas->add_option("--p", p, "prime p")->required();
    lemmas->add_option("--q", q, "prime q")->required();
    lemmas->add_option("--seed", seed, "seed")->required();
    lemmas->add_option("--trials", trials, "trials per lemma")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        CertificateSink sink(certs);

        if (check->parsed()) {
            const auto f = parse_set_file(read_file(file));
            const auto s = require_set(f, "check");
            const auto& g = f.group;
            const auto sp = find_spectrum(g, s);
            const auto tl = find_complement(g, s);
            out << "set: " << s.count() << " elements of Z_" << g.p() << "^2 x Z_" << g.q() << "\n";
            out << "spectral: " << (sp.found() ? "yes" : "no") << "\n";
            if (sp.found())
                out << "  spectrum: " << set_text(g, sp.certificate->spectrum) << "\n";
            else
                out << "  exhausted after " << sp.explored_nodes << " search nodes\n";
            out << "tile: " << (tl.found() ? "yes" : "no") << "\n";
            if (tl.found())
                out << "  complement: " << set_text(g, tl.certificate->complement) << "\n";
            else
                out << "  exhausted after " << tl.explored_nodes << " search nodes\n";
            sink.append(spectrum_record(g, s, sp));
            sink.append(complement_record(g, s, tl));
            if (sp.found() != tl.found()) {
                out << "conjecture violation: spectral and tile disagree\n";
                sink.append(violation_record(g, Violation{s, sp.found(), tl.found(), sp.explored_nodes, tl.explored_nodes,
                                                    std::nullopt}));
                return kExitViolation;
            }
            return kExitOk;
        }

        if (spectrum->parsed()) {
            const auto f = parse_set_file(read_file(file));
            const auto s = require_set(f, "spectrum");
            const auto sp = find_spectrum(f.group, s);
            if (sp.found())
                out << "spectral: yes\nspectrum: " << set_text(f.group, sp.certificate->spectrum) << "\n";
            else
                out << "spectral: no (exhausted after " << sp.explored_nodes << " search nodes)\n";
            sink.append(spectrum_record(f.group, s, sp));
            return kExitOk;
        }

        if (complement->parsed()) {
            const auto f = parse_set_file(read_file(file));
            const auto s = require_set(f, "complement");
            const auto tl = find_complement(f.group, s);
            if (tl.found())
                out << "tile: yes\ncomplement: " << set_text(f.group, tl.certificate->complement) << "\n";
            else
                out << "tile: no (exhausted after " << tl.explored_nodes << " search nodes)\n";
            sink.append(complement_record(f.group, s, tl));
            return kExitOk;
        }

        if (zeroset->parsed()) {
            const auto f = parse_set_file(read_file(file));
            const auto& g = f.group;
            SubsetMask zeros(g.order());
            if (f.is_multiset()) {
                const auto m = f.weights();
                for (ElementIndex chi = 1; chi < g.order(); ++chi)
                    if (vanishes(g, g.element(chi), m))
                        zeros.insert(chi);
            } else {
                zeros = zero_set(g, std::get<SubsetMask>(f.contents));
            }
            out << "zero set: " << zeros.count() << " characters\n";
            for (auto chi : zeros.indices())
                out << "  " << to_string(g.element(chi)) << "\n";
            return kExitOk;
        }

        if (projection->parsed()) {
            const auto f = parse_set_file(read_file(file));
            const auto [a1, a2] = parse_pair(a_text);
            const auto c = project(f.group, f.weights(), {a1, a2}, b);
            out << "projection onto (<x,a>, v), a=(" << a1 << "," << a2 << "), b=" << b << ":\n";
            print_matrix(out, c);
            return kExitOk;
        }

        if (decompose->parsed()) {
            const auto c = parse_matrix_file(read_file(file));
            if (!c.nonnegative())
                throw Error("decompose needs nonnegative entries");
            if (!vanishes(c, CharOrder::PQ)) {
                out << "vanishing: no\n";
                return kExitOk;
            }
            const auto d = lam_leung(c);
            out << "vanishing: yes\n";
            out << "x (Z_p-coset weights): " << vector_text(d.x) << "\n";
            out << "y (Z_q-coset weights): " << vector_text(d.y) << "\n";
            out << "total: " << c.sum() << " = " << c.rows() << "*" << d.p_coset_count() << " + " << c.cols() << "*"
                << d.q_coset_count() << "\n";
            return kExitOk;
        }

        if (verify->parsed()) {
            const auto g = make_group(p, q);
            VerifyOptions options;
            options.threads = threads;
            std::optional<std::uint32_t> size_filter;
            if (size_opt->count())
                size_filter = size;
            if (exhaustive_flag->count())
                options.mode = ExhaustiveMode{!no_orbits, size_filter};
            else
                options.mode = SampledMode{seed, samples, size_filter};
            const auto report = verify_conjecture(g, options);
            out << (as_json ? report_to_json(report) : render_report(report));
            for (const auto& v : report.violations)
                sink.append(violation_record(g, v));
            return report.consistent() ? kExitOk : kExitViolation;
        }

        if (lemmas->parsed()) {
            const auto g = make_group(p, q);
            const auto report = lemma_suite(g, seed, trials);
            out << render_lemma_report(report);
            return report.all_passed() ? kExitOk : kExitViolation;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace fuglede
