#include "ocs/criteria.hpp"
#include "ocs/extend.hpp"
#include "ocs/fixtures.hpp"
#include "ocs/generate.hpp"
#include "ocs/io.hpp"
#include "ocs/represent.hpp"
#include "ocs/suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;
using namespace ocs;

constexpr int kOk = 0, kConditionFails = 1, kInputError = 2;

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), path);
}

json vec_json(const RVec& v) {
    json a = json::array();
    for (const Rat& r : v) a.push_back(rat_str(r));
    return a;
}

json weights_json(const std::vector<Rat>& w) {
    json a = json::array();
    for (const Rat& r : w) a.push_back(rat_str(r));
    return a;
}

json witness_json(const CriterionWitness& w) {
    json j;
    if (const auto* t = std::get_if<TripleWitness>(&w)) {
        j["kind"] = "triple";
        j["lo"] = vec_json(t->lo);
        j["mid"] = vec_json(t->mid);
        j["hi"] = vec_json(t->hi);
    } else if (const auto* s = std::get_if<SeparatingWitness>(&w)) {
        j["kind"] = "separating";
        j["row_index"] = s->row_index;
        j["x"] = vec_json(s->x);
        j["sup_states"] = rat_str(s->sup_states);
        j["seminorm_value"] = rat_str(s->p_value);
    } else if (const auto* g = std::get_if<GapWitness>(&w)) {
        j["kind"] = "gap";
        j["u"] = vec_json(g->u);
        j["norm_u"] = rat_str(g->norm_u);
        if (g->best_split)
            j["best_split"] = rat_str(*g->best_split);
        else
            j["best_split"] = nullptr;
    }
    return j;
}

json report_json(const CriterionReport& r) {
    json j;
    j["criterion"] = criterion_name(r.criterion);
    j["alpha"] = r.alpha;
    j["holds"] = r.holds;
    if (r.witness) j["witness"] = witness_json(*r.witness);
    return j;
}

int cmd_check(const std::string& path, int alpha_opt, const std::string& criterion) {
    Instance inst = load_instance(path);
    FiniteStateSpace fs = build_representation(inst.space);
    json out = json::array();
    bool all_hold = true;
    for (std::size_t alpha = 0; alpha < inst.space.family_size(); ++alpha) {
        if (alpha_opt >= 0 && static_cast<std::size_t>(alpha_opt) != alpha) continue;
        std::vector<CriterionReport> reports;
        if (criterion.empty() || criterion == "full_ball" || criterion == "sandwich")
            reports.push_back(check_full(inst.space, alpha));
        if (criterion.empty() || criterion == "state_sup" || criterion == "semi_all")
            reports.push_back(check_state_cover(inst.space, alpha, fs));
        if (criterion.empty() || criterion == "gk_decomposable")
            reports.push_back(check_gk(inst.space, alpha, fs));
        if (reports.empty()) throw parse_error("unknown criterion '" + criterion + "'");
        for (const CriterionReport& r : reports) {
            all_hold = all_hold && r.holds;
            out.push_back(report_json(r));
        }
    }
    std::cout << out.dump(2) << "\n";
    return all_hold ? kOk : kConditionFails;
}

int cmd_state(const std::string& path, const std::string& x0_text, std::size_t alpha) {
    Instance inst = load_instance(path);
    RVec x0 = parse_vector(x0_text);
    auto cert = find_state(inst.space, alpha, x0);
    json j;
    j["alpha"] = alpha;
    j["x0"] = vec_json(x0);
    j["seminorm_value"] = rat_str(inst.space.seminorm(alpha).eval(x0));
    if (cert) {
        j["state"] = vec_json(cert->f);
        j["sign"] = cert->sign;
        j["verified"] = verify_state(inst.space, *cert);
    } else {
        j["state"] = nullptr;
    }
    std::cout << j.dump(2) << "\n";
    return cert ? kOk : kConditionFails;
}

int cmd_bnn(const std::string& path, const std::string& sub_label,
            const std::string& f_label, std::size_t alpha) {
    Instance inst = load_instance(path);
    auto sit = inst.subspaces.find(sub_label);
    if (sit == inst.subspaces.end()) throw parse_error("no subspace labeled '" + sub_label + "'");
    auto fit = inst.functionals.find(f_label);
    if (fit == inst.functionals.end())
        throw parse_error("no functional labeled '" + f_label + "'");
    const Subspace& sub = sit->second;
    RVec f_on_sub(sub.dim());
    for (std::size_t i = 0; i < sub.dim(); ++i) f_on_sub[i] = dot(fit->second, sub.basis().row(i));
    ExtensionProblem ep{inst.space, alpha, sub, f_on_sub};

    json j;
    j["alpha"] = alpha;
    auto sigma = subspace_norm(ep);
    j["subspace_norm"] = sigma ? json(rat_str(*sigma)) : json(nullptr);
    BNNResult routes[4] = {bnn_check(ep, BNNRoute::cond2), bnn_check(ep, BNNRoute::cond3),
                           bnn_check(ep, BNNRoute::cond4), bnn_check(ep, BNNRoute::cond5)};
    BNNResult built = bnn_construct(ep);
    bool agree = built.extendable == routes[0].extendable;
    for (const BNNResult& r : routes) agree = agree && r.extendable == built.extendable;
    j["routes_agree"] = agree;
    j["extendable"] = built.extendable;
    if (built.extension) j["extension"] = vec_json(*built.extension);
    if (routes[2].violation) {
        j["violation"]["x"] = vec_json(routes[2].violation->first);
        j["violation"]["y"] = vec_json(routes[2].violation->second);
    }
    std::cout << j.dump(2) << "\n";
    return built.extendable ? kOk : kConditionFails;
}

int cmd_decompose(const std::string& path, const std::string& u_text, std::size_t alpha,
                  bool gk) {
    Instance inst = load_instance(path);
    Functional u = parse_vector(u_text);
    json j;
    j["alpha"] = alpha;
    j["u"] = vec_json(u);
    if (gk) {
        GkResult r = grosberg_krein(inst.space, alpha, u);
        j["decomposable"] = r.decomposable;
        j["norm_u"] = rat_str(r.norm_u);
        if (r.decomposable) {
            j["v1"] = vec_json(r.v1);
            j["v2"] = vec_json(r.v2);
            j["norm_sum"] = rat_str(r.norm_sum);
            j["gap"] = rat_str(r.gap);
        }
        std::cout << j.dump(2) << "\n";
        return r.decomposable && r.gap == 0 ? kOk : kConditionFails;
    }
    auto [v1, v2] = krein_decompose(inst.space, alpha, u);
    j["v1"] = vec_json(v1);
    j["v2"] = vec_json(v2);
    std::cout << j.dump(2) << "\n";
    return kOk;
}

int cmd_represent(const std::string& path) {
    Instance inst = load_instance(path);
    FiniteStateSpace fs = build_representation(inst.space);
    RepresentationReport rep = verify_representation(inst.space, fs);
    json j;
    json verts = json::array();
    for (std::size_t alpha = 0; alpha < fs.family_size(); ++alpha) {
        json va = json::array();
        for (const RVec& v : fs.vertices(alpha)) va.push_back(vec_json(v));
        verts.push_back(
            json{{"alpha", alpha}, {"name", inst.space.seminorm(alpha).name()}, {"vertices", va}});
    }
    j["state_space"] = verts;
    j["injective"] = rep.injective;
    j["bipositive"] = rep.bipositive;
    j["isometric_on_positives"] = rep.isometric_on_positives;
    j["isometric_everywhere"] = rep.isometric_everywhere;
    std::cout << j.dump(2) << "\n";
    bool all = rep.injective && rep.bipositive;
    for (bool b : rep.isometric_everywhere) all = all && b;
    return all ? kOk : kConditionFails;
}

int cmd_additivity(const std::string& path, const std::string& f_text,
                   const std::string& g_text, std::size_t alpha) {
    Instance inst = load_instance(path);
    Functional f = parse_vector(f_text), g = parse_vector(g_text);
    FiniteStateSpace fs = build_representation(inst.space);
    AdditivityResult r = norm_additivity_check(inst.space, alpha, f, g);
    AdditivityWitnessResult w = additivity_extension_witness(inst.space, alpha, fs, f, g);
    json j;
    j["alpha"] = alpha;
    j["norm_f"] = rat_str(r.norm_f);
    j["norm_g"] = rat_str(r.norm_g);
    j["norm_sum"] = rat_str(r.lhs);
    j["additive"] = r.additive;
    j["state_cover_holds"] = w.state_cover_holds;
    if (w.witness) {
        j["witness"]["w_f"] = weights_json(w.witness->w_f);
        j["witness"]["w_h"] = weights_json(w.witness->w_h);
    } else {
        j["witness"] = nullptr;
    }
    std::cout << j.dump(2) << "\n";
    return r.additive ? kOk : kConditionFails;
}

int cmd_quotient(const std::string& path, std::size_t alpha) {
    Instance inst = load_instance(path);
    QuotientResult q = quotient(inst.space, alpha);
    json j;
    j["alpha"] = alpha;
    json proj = json::array();
    for (std::size_t i = 0; i < q.projection.nrows(); ++i)
        proj.push_back(vec_json(q.projection.row(i)));
    j["projection"] = proj;
    Instance qi{"quotient", q.space, {}, {}, {}};
    j["quotient_space"] = json::parse(serialize_instance(qi));
    std::cout << j.dump(2) << "\n";
    return kOk;
}

int cmd_gen(std::uint64_t seed, std::size_t dim) {
    GenerateOptions opt;
    opt.dim = dim;
    CalibratedSpace s = generate_instance(seed, opt);
    Instance inst{"seed-" + std::to_string(seed), s, {}, {}, {}};
    std::cout << serialize_instance(inst);
    return kOk;
}

int cmd_suite(const std::string& seeds, bool use_fixtures, bool corrupt) {
    std::vector<Instance> instances;
    if (use_fixtures)
        for (Instance& inst : fixture_instances()) instances.push_back(std::move(inst));
    if (!seeds.empty()) {
        auto dots = seeds.find("..");
        if (dots == std::string::npos) throw parse_error("--seeds expects a..b");
        std::uint64_t a = std::stoull(seeds.substr(0, dots));
        std::uint64_t b = std::stoull(seeds.substr(dots + 2));
        GenerateOptions opt;
        opt.dim = 2;
        for (std::uint64_t s = a; s <= b; ++s) {
            opt.dim = 1 + s % 3;  // spread over dims 1..3
            instances.push_back(
                Instance{"seed-" + std::to_string(s), generate_instance(s, opt), {}, {}, {}});
        }
    }
    if (instances.empty()) throw parse_error("suite: nothing to run (use --fixtures or --seeds)");
    SuiteOptions opt;
    opt.corrupt_full_check = corrupt;
    SuiteReport rep = run_suite(instances, opt);
    std::cout << rep.to_json();
    return rep.all_agree ? kOk : kConditionFails;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decision toolkit for polyhedral ordered spaces"};
    app.require_subcommand(1);

    std::string path, x0_text, u_text, f_text, g_text, sub_label, f_label, criterion, seeds;
    int alpha = 0, alpha_opt = -1;
    std::uint64_t seed = 0;
    std::size_t dim = 2;
    bool gk = false, use_fixtures = false, corrupt = false;

    CLI::App* c_check = app.add_subcommand("check", "decide the representability criteria");
    c_check->add_option("file", path)->required();
    c_check->add_option("--alpha", alpha_opt);
    c_check->add_option("--criterion", criterion,
                        "full_ball|sandwich|semi_all|state_sup|gk_decomposable");

    CLI::App* c_state = app.add_subcommand("state", "find a state attaining the seminorm");
    c_state->add_option("file", path)->required();
    c_state->add_option("--x0", x0_text)->required();
    c_state->add_option("--alpha", alpha);

    CLI::App* c_bnn = app.add_subcommand("bnn", "positive norm-preserving extension");
    c_bnn->add_option("file", path)->required();
    c_bnn->add_option("--subspace", sub_label)->required();
    c_bnn->add_option("--functional", f_label)->required();
    c_bnn->add_option("--alpha", alpha);

    CLI::App* c_dec = app.add_subcommand("decompose", "split into positive functionals");
    c_dec->add_option("file", path)->required();
    c_dec->add_option("--u", u_text)->required();
    c_dec->add_option("--alpha", alpha);
    c_dec->add_flag("--gk", gk, "minimize the norm sum and report the gap");

    CLI::App* c_rep = app.add_subcommand("represent", "build and verify the state space");
    c_rep->add_option("file", path)->required();

    CLI::App* c_add = app.add_subcommand("additivity", "norm additivity of two positives");
    c_add->add_option("file", path)->required();
    c_add->add_option("--f", f_text)->required();
    c_add->add_option("--g", g_text)->required();
    c_add->add_option("--alpha", alpha);

    CLI::App* c_quot = app.add_subcommand("quotient", "quotient by a seminorm kernel");
    c_quot->add_option("file", path)->required();
    c_quot->add_option("--alpha", alpha);

    CLI::App* c_gen = app.add_subcommand("gen", "generate a random instance");
    c_gen->add_option("--seed", seed)->required();
    c_gen->add_option("--dim", dim);

    CLI::App* c_suite = app.add_subcommand("suite", "theorem-equivalence verification run");
    c_suite->add_option("--seeds", seeds, "seed range a..b");
    c_suite->add_flag("--fixtures", use_fixtures, "include the built-in corpus");
    c_suite->add_flag("--self-test-corrupt", corrupt)->group("");  // test hook, hidden

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_check->parsed()) return cmd_check(path, alpha_opt, criterion);
        if (c_state->parsed()) return cmd_state(path, x0_text, alpha);
        if (c_bnn->parsed()) return cmd_bnn(path, sub_label, f_label, alpha);
        if (c_dec->parsed()) return cmd_decompose(path, u_text, alpha, gk);
        if (c_rep->parsed()) return cmd_represent(path);
        if (c_add->parsed()) return cmd_additivity(path, f_text, g_text, alpha);
        if (c_quot->parsed()) return cmd_quotient(path, alpha);
        if (c_gen->parsed()) return cmd_gen(seed, dim);
        if (c_suite->parsed()) return cmd_suite(seeds, use_fixtures, corrupt);
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const space_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
