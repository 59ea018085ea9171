// chebdyn: functional graphs of Chebyshev polynomials over finite fields.
//
// Exit codes: 0 ok, 1 verification mismatch, 2 usage error, 3 refused input.

#include <chebdyn/chebdyn.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace chebdyn;

enum ExitCode : int { k_ok = 0, k_mismatch = 1, k_usage = 2, k_refused = 3 };

struct Options {
    u32 ell = 0;
    u32 p = 0;
    unsigned n = 1;
    std::int64_t t = 0;
    std::string format = "table";
    std::string out;
    std::string dot;
    std::string component;
    std::string mode = "both";
    std::optional<u64> cap;
    unsigned max_level = 3;
    std::optional<unsigned> weights;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::invalid_argument("cannot open --out path " + o.out);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// "52", "2^2*13"
FactoredInt parse_divisor(const std::string& s) {
    if (s.find_first_of("^*") == std::string::npos) return factor_int(std::stoull(s));
    std::vector<FactoredInt::Term> terms;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, '*')) {
        const auto caret = part.find('^');
        const u128 q = std::stoull(part.substr(0, caret));
        const unsigned e = caret == std::string::npos ? 1 : static_cast<unsigned>(std::stoul(part.substr(caret + 1)));
        if (!is_prime(q)) throw std::invalid_argument("--component: " + part + " is not a prime power");
        terms.emplace_back(q, e);
    }
    return FactoredInt(std::move(terms));
}

int run_graph(const Options& o) {
    check_pair(o.ell, o.p);
    const FieldCtx F = make_field(o.p, o.n);
    const FuncGraph g = build_graph(o.ell, F, o.cap.value_or(k_default_enum_cap));
    const GraphSummary s = summarize(g);
    if (!o.dot.empty()) {
        std::optional<FactoredInt> filter;
        if (!o.component.empty()) filter = parse_divisor(o.component);
        const std::string text = export_dot(g, filter);
        std::ofstream f(o.dot);
        if (!f) throw std::invalid_argument("cannot open --dot path " + o.dot);
        f << text;
    }
    emit(o, o.format == "json" ? dump(to_json(s)) : render_table(s));
    return k_ok;
}

int run_predict(const Options& o) {
    if (o.weights) {
        const StructureParams sp = structure_params(o.ell, o.p, 1);
        const auto rows = weight_table(o.ell, o.p, *o.weights);
        const unsigned degree = static_cast<unsigned>(2 * sp.mu * ipow(o.ell, *o.weights));
        if (o.format == "json") {
            json j;
            j["field_degree"] = degree;
            j["mu"] = sp.mu;
            j["v"] = sp.v;
            j["weights"] = to_json(rows);
            emit(o, dump(j));
        } else {
            emit(o, "weights over F_" + std::to_string(o.p) + "^" + std::to_string(degree) + " (mu = " + std::to_string(sp.mu) +
                        ", v = " + std::to_string(sp.v) + ")\n" + render_table(rows));
        }
        return k_ok;
    }
    const StructureParams sp = structure_params(o.ell, o.p, o.n);
    const GraphSummary s = predict_summary(o.ell, o.p, o.n);
    if (o.format == "json") {
        json j;
        j["params"] = to_json(sp);
        j["summary"] = to_json(s);
        emit(o, dump(j));
    } else {
        emit(o, render_table(sp) + "\n" + render_table(s));
    }
    return k_ok;
}

int run_verify(const Options& o) {
    const VerifyReport rep = verify_instance(o.ell, o.p, o.n, o.cap.value_or(k_default_enum_cap));
    emit(o, o.format == "json" ? dump(to_json(rep)) : render_table(rep));
    return rep.ok() ? k_ok : k_mismatch;
}

int run_factor(const Options& o) {
    check_pair(o.ell, o.p);
    const bool want_pred = o.mode != "actual";
    const bool want_act = o.mode != "predicted";
    std::optional<FactorPattern> pred, act;
    if (want_pred) pred = factor_pattern_predicted(o.ell, o.p, o.n, o.t);
    if (want_act) act = factor_pattern_actual(o.ell, o.p, o.n, o.t, o.cap.value_or(k_default_degree_cap));
    const bool match = !(pred && act) || *pred == *act;
    const SignedFactoredInt disc = disc_factored(o.ell, o.n, o.t);
    if (o.format == "json") {
        json j;
        if (pred) j["predicted"] = to_json(*pred);
        if (act) j["actual"] = to_json(*act);
        if (pred && act) j["match"] = match;
        j["discriminant"] = disc.str();
        emit(o, dump(j));
    } else {
        std::string text = "T_" + std::to_string(o.ell) + "^" + std::to_string(o.n) + "(x) - " + std::to_string(o.t) + " mod " +
                           std::to_string(o.p) + "\n";
        if (pred) text += "predicted:\n" + render_table(*pred);
        if (act) text += "actual:\n" + render_table(*act);
        if (pred && act) text += std::string("match: ") + (match ? "yes" : "NO") + "\n";
        text += "discriminant: " + disc.str() + "\n";
        emit(o, text);
    }
    return match ? k_ok : k_mismatch;
}

int run_decompose(const Options& o) {
    const DecompReport rep = decompose_prime(o.ell, o.t, o.p, o.max_level);
    if (o.format == "json") {
        emit(o, dump(to_json(rep)));
    } else {
        emit(o, "p = " + std::to_string(o.p) + " in Q(theta), T_" + std::to_string(o.ell) + "^n(theta) = " + std::to_string(o.t) +
                    "; iterates irreducible mod " + std::to_string(rep.certified_by) + "\n" + render_table(rep));
    }
    return k_ok;
}

int run_density(const Options& o) {
    const Rational dens = periodic_density(o.ell, o.p, o.n);
    const Rational form = density_formula(o.ell, o.p, o.n);
    const Rational lim = tower_limit(o.ell);
    std::vector<TowerLevel> tower;
    for (unsigned k = 1; k <= o.max_level; ++k) tower.push_back(tower_level(o.ell, o.p, k));
    if (o.format == "json") {
        json j;
        j["density"] = dens.str();
        j["formula"] = form.str();
        j["tower_limit"] = lim.str();
        json levels = json::array();
        for (const auto& t : tower)
            levels.push_back({{"level", t.level}, {"a_n", t.degree.str()}, {"lambda_m", t.lambda_m}, {"density", t.density.str()}, {"symbolic", t.symbolic}});
        j["tower"] = std::move(levels);
        emit(o, dump(j));
    } else {
        std::string text = "periodic density " + dens.str() + "\n1/(2 l^lambda-) + 1/(2 l^lambda+) = " + form.str() + "\ntower limit " + lim.str() + "\n";
        TextTable t({"Level", "a_n", "lambda_m", "Density", "Form"});
        for (const auto& lv : tower) t.add({std::to_string(lv.level), lv.degree.str(), std::to_string(lv.lambda_m), lv.density.str(), lv.symbolic});
        emit(o, text + t.str());
    }
    return k_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Functional graphs of Chebyshev polynomials over finite fields"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool need_n, bool need_t) {
        sub->add_option("--ell", o.ell, "degree l of T_l (prime)")->required()->check(CLI::PositiveNumber);
        sub->add_option("--p", o.p, "odd prime characteristic")->required()->check(CLI::PositiveNumber);
        if (need_n) sub->add_option("--n", o.n, "extension degree or iterate count")->check(CLI::PositiveNumber);
        if (need_t) sub->add_option("--t", o.t, "constant term t")->required();
        sub->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));
        sub->add_option("--out", o.out, "write output to a file");
    };

    auto* graph = app.add_subcommand("graph", "enumerate G(l,p,n) and summarize it");
    add_common(graph, true, false);
    graph->add_option("--dot", o.dot, "write a Graphviz rendering");
    graph->add_option("--component", o.component, "restrict --dot to cycles of this divisor, e.g. 2^2*13");
    graph->add_option("--cap", o.cap, "largest p^n to enumerate");

    auto* predict = app.add_subcommand("predict", "closed-form summary without enumeration");
    add_common(predict, true, false);
    predict->add_option("--weights", o.weights, "print weights over F_p^(2 mu l^N) instead")->check(CLI::NonNegativeNumber);

    auto* verify = app.add_subcommand("verify", "brute force against every closed form");
    add_common(verify, true, false);
    verify->add_option("--cap", o.cap, "largest p^n to enumerate");

    auto* factor = app.add_subcommand("factor", "factor pattern of T_l^n(x) - t mod p");
    add_common(factor, true, true);
    factor->add_option("--mode", o.mode, "both, predicted or actual")->check(CLI::IsMember({"both", "predicted", "actual"}));
    factor->add_option("--cap", o.cap, "largest degree l^n to factor");

    auto* decompose = app.add_subcommand("decompose", "residue degrees of p in the tower K_n");
    add_common(decompose, false, true);
    decompose->add_option("--max-level", o.max_level, "levels 1..N")->check(CLI::PositiveNumber);

    auto* density = app.add_subcommand("density", "exact density of periodic points");
    add_common(density, true, false);
    density->add_option("--max-level", o.max_level, "tower levels to list")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? k_ok : k_usage;
    }

    try {
        if (*graph) return run_graph(o);
        if (*predict) return run_predict(o);
        if (*verify) return run_verify(o);
        if (*factor) return run_factor(o);
        if (*decompose) return run_decompose(o);
        if (*density) return run_density(o);
    } catch (const RefusedError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return k_refused;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return k_usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return k_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return k_mismatch;
    }
    return k_usage;
}
