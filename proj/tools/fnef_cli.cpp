#include <fnef/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace fnef;

namespace {

constexpr int exit_usage = 64;
constexpr int exit_domain = 65;

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(detail::trim(cur));
    return out;
}

CurveType parse_type(const std::string& s) {
    auto xs = split_list(s, s.find(':') != std::string::npos ? ':' : ',');
    if (xs.size() != 4) throw DomainError("curve type needs four entries, got '" + s + "'");
    CurveType t{};
    for (int i = 0; i < 4; ++i) {
        if (xs[i].empty() || xs[i].find_first_not_of("0123456789") != std::string::npos)
            throw DomainError("malformed curve type '" + s + "'");
        t[i] = std::stoi(xs[i]);
    }
    return t;
}

ParamTriple parse_params(const std::string& s) {
    auto xs = split_list(s, ',');
    if (xs.size() != 3) throw DomainError("params need three values a,l,m");
    return {parse_rational(xs[0]), parse_rational(xs[1]), parse_rational(xs[2])};
}

/// "c{1,2,3}=-1" -> "set c{1,2,3} = -1"; "c{1,4,5}<=1/6" -> "assume c{1,4,5} <= 1/6".
std::string side_line(const std::string& keyword, const std::string& s, const std::vector<std::string>& ops) {
    for (const auto& op : ops) {
        auto at = s.find(op);
        if (at == std::string::npos) continue;
        return keyword + " " + detail::trim(s.substr(0, at)) + " " + op + " " + detail::trim(s.substr(at + op.size())) + "\n";
    }
    throw DomainError("cannot read side condition '" + s + "'");
}

struct Output {
    bool structured = false;
    void emit(const Report& r) const { std::cout << render(r, structured); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact F-nef cone and certificate toolkit for M0,n-bar"};
    app.require_subcommand(1);
    Output out;
    std::string format = "text";
    app.add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    std::string corpus_dir = default_corpus_dir().string();
    app.add_option("--corpus", corpus_dir, "certificate corpus directory");

    int n = 7;
    auto* rank = app.add_subcommand("rank", "pairing matrix dimensions");
    rank->add_option("--n", n)->required();

    std::string curve, divisor;
    auto* inter = app.add_subcommand("intersect", "one curve-divisor pairing");
    inter->add_option("--curve", curve)->required();
    inter->add_option("--divisor", divisor)->required();
    inter->add_option("--n", n);

    std::string jtext, type_text;
    auto* keel = app.add_subcommand("keel-cert", "prove one Keel coefficient identity");
    keel->add_option("--n", n)->required();
    keel->add_option("--J", jtext)->required();
    keel->add_option("--type", type_text)->required();

    auto* kap = app.add_subcommand("kapranov", "det(M) and Keel independence");
    kap->add_option("--n", n)->required();

    std::string params_text = "3,5,9";
    auto* basis = app.add_subcommand("basis", "basis for given parameters");
    basis->add_option("--params", params_text);

    std::vector<std::string> files;
    auto* verify = app.add_subcommand("verify", "verify certificate files");
    verify->add_option("--file", files)->required();

    auto* appendix = app.add_subcommand("verify-appendix", "verify and repair the corpus");

    std::string target, problem_file;
    std::vector<std::string> sets, assumes;
    std::string emit_path;
    auto* search = app.add_subcommand("search", "LP bound with certificate");
    search->add_option("--target", target);
    search->add_option("--set", sets);
    search->add_option("--assume", assumes);
    search->add_option("--problem", problem_file);
    search->add_option("--params", params_text);
    search->add_option("--emit", emit_path, "write the certificate here");

    auto* prove = app.add_subcommand("prove-m07", "the full n = 7 run");

    for (auto* sub : {rank, inter, keel, kap, basis, verify, appendix, search, prove}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }
    out.structured = format == "structured";

    try {
        if (*rank) {
            out.emit(rank_report(n));
        } else if (*inter) {
            out.emit(intersect_report(parse_fcurve(curve, n), parse_boundary_label(divisor, n)));
        } else if (*keel) {
            auto j = parse_boundary_label(jtext, n);
            auto t = parse_type(type_text);
            auto splits = valid_splits(j, t);
            if (splits.empty()) throw DomainError("no split of " + j.to_string() + " fits type " + format_type(t));
            Report r = Report::array();
            bool ok = true;
            for (const auto& s : splits) {
                auto k = prove_keel_coefficient(j, t, s);
                ok = ok && k.passed;
                r.push_back(keel_report(k));
            }
            out.emit(r.size() == 1 ? r[0] : r);
            return ok ? 0 : 1;
        } else if (*kap) {
            out.emit(kapranov_report(n));
        } else if (*basis) {
            out.emit(basis_report(parse_params(params_text)));
        } else if (*verify) {
            int code = 0;
            Report r = Report::array();
            for (const auto& f : files) {
                try {
                    auto c = parse_certificate(read_file(f));
                    auto v = verify_certificate(c);
                    code = std::max(code, exit_code(v.status));
                    r.push_back(verification_report(v));
                } catch (const CertificateSyntaxError& e) {
                    code = std::max(code, exit_code(VerifyStatus::lint));
                    r.push_back({{"file", f}, {"status", "SYNTAX"}, {"message", e.what()}});
                }
            }
            out.emit(r.size() == 1 ? r[0] : r);
            return code;
        } else if (*appendix) {
            auto certs = appendix_corpus(corpus_dir);
            std::vector<CertificateOutcome> outcomes(certs.size());
            parallel_for(certs.size(), [&](std::size_t i) { outcomes[i] = check_corpus_certificate(certs[i]); });
            Report r = Report::object();
            int code = 0;
            for (const auto& o : outcomes) {
                r[o.id] = to_string(o.outcome);
                if (o.outcome == RepairResult::Outcome::unachievable) code = std::max(code, 1);
                if (o.outcome == RepairResult::Outcome::failed) code = std::max(code, 2);
            }
            if (out.structured) {
                Report detail = Report::array();
                for (const auto& o : outcomes) detail.push_back(outcome_report(o));
                out.emit(detail);
            } else {
                out.emit(r);
            }
            return code;
        } else if (*search) {
            std::string text;
            if (!problem_file.empty()) {
                text = read_file(problem_file);
            } else {
                if (target.empty()) throw CLI::RequiredError("--target or --problem");
                auto p = parse_params(params_text);
                text = "n: 7\nparams: " + p.to_string() + "\nminimize " + target + "\n";
                for (const auto& s : sets) text += side_line("set", s, {"="});
                for (const auto& a : assumes) text += side_line("assume", a, {"<=", ">="});
            }
            auto problem = parse_problem(text);
            if (problem.normalizations.empty()) throw CLI::ValidationError("search", "at least one --set normalization is required");
            auto s = search_bound(problem);
            if (!emit_path.empty() && s.certificate) {
                std::ofstream f(emit_path);
                f << serialize_certificate(*s.certificate);
            }
            out.emit(search_report(s));
            return s.status == LPStatus::optimal ? 0 : 1;
        } else if (*prove) {
            auto t = verify_theorem_m07(corpus_dir);
            out.emit(theorem_report(t));
            return t.passed ? 0 : 1;
        }
        return 0;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    } catch (const CertificateSyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return exit_code(VerifyStatus::lint);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    }
}
