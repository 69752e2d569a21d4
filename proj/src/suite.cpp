#include "ocs/suite.hpp"

#include "ocs/criteria.hpp"
#include "ocs/extend.hpp"
#include "ocs/generate.hpp"
#include "ocs/represent.hpp"

#include <json.hpp>

#include <chrono>
#include <random>

namespace ocs {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

bool check_attainment(const CalibratedSpace& space, std::size_t alpha, std::mt19937_64& rng,
                      int samples, const CriterionReport& cover) {
    for (int t = 0; t < samples; ++t) {
        RVec x0 = sample_point(rng, space.dim(), -9, 9);
        if (!find_state(space, alpha, x0)) return false;
    }
    if (!cover.holds) {
        // Directed sample: the separating element cannot have a state, and
        // that failure is exactly what the leg must report.
        const auto& w = std::get<SeparatingWitness>(*cover.witness);
        if (find_state(space, alpha, w.x))
            throw std::logic_error("suite: separating element unexpectedly has a state");
        return false;
    }
    return true;
}

bool check_gk_leg(const CalibratedSpace& space, std::size_t alpha, std::mt19937_64& rng,
                  int samples, const FiniteStateSpace& fs, const CriterionReport& cover) {
    if (!cover.holds) {
        // check_gk asserts the directed witness has a positive gap.
        CriterionReport r = check_gk(space, alpha, fs);
        if (r.holds) throw std::logic_error("suite: gk verdict contradicts the cover");
        return false;
    }
    for (int t = 0; t < samples; ++t) {
        Functional u = sample_span_functional(rng, space, alpha);
        GkResult gk = grosberg_krein(space, alpha, u);
        if (!gk.decomposable || gk.gap != 0) return false;
    }
    return true;
}

bool check_additivity_leg(const CalibratedSpace& space, std::size_t alpha, std::mt19937_64& rng,
                          int samples, const FiniteStateSpace& fs) {
    for (int t = 0; t < samples; ++t) {
        Functional f = sample_positive_functional(rng, space, fs.vertices(alpha));
        Functional g = sample_positive_functional(rng, space, fs.vertices(alpha));
        AdditivityResult add = norm_additivity_check(space, alpha, f, g);
        AdditivityWitnessResult wit = additivity_extension_witness(space, alpha, fs, f, g);
        if (wit.witness.has_value()) {
            // Feasibility always implies additivity.
            if (!add.additive) return false;
        } else if (wit.state_cover_holds && add.additive) {
            // Under the theorem hypothesis the converse holds as well.
            return false;
        }
    }
    return true;
}

bool check_bnn_leg(const CalibratedSpace& space, std::mt19937_64& rng, int samples) {
    for (std::size_t alpha = 0; alpha < space.family_size(); ++alpha) {
        for (int t = 0; t < samples; ++t) {
            std::size_t sub_dim = 1 + (t % std::min<std::size_t>(2, space.dim()));
            ExtensionProblem ep{space, alpha, sample_subspace(rng, space, sub_dim),
                                sample_point(rng, sub_dim, -4, 4)};
            BNNResult c2 = bnn_check(ep, BNNRoute::cond2);
            BNNResult c3 = bnn_check(ep, BNNRoute::cond3);
            BNNResult c4 = bnn_check(ep, BNNRoute::cond4);
            BNNResult c5 = bnn_check(ep, BNNRoute::cond5);
            BNNResult built = bnn_construct(ep);
            bool e = c4.extendable;
            if (c2.extendable != e || c3.extendable != e || c5.extendable != e ||
                built.extendable != e)
                return false;
        }
    }
    return true;
}

}  // namespace

SuiteReport run_suite(const std::vector<Instance>& instances, const SuiteOptions& opt) {
    auto start = std::chrono::steady_clock::now();
    SuiteReport report;
    report.all_agree = true;
    for (std::size_t idx = 0; idx < instances.size(); ++idx) {
        const Instance& inst = instances[idx];
        const CalibratedSpace& space = inst.space;
        std::mt19937_64 rng(fnv1a(inst.name) ^ 0x0C5u);
        InstanceVerdict iv;
        iv.name = inst.name;
        FiniteStateSpace fs = build_representation(space);
        RepresentationReport rep = verify_representation(space, fs);
        iv.agree = true;
        for (std::size_t alpha = 0; alpha < space.family_size(); ++alpha) {
            AlphaVerdict av;
            av.alpha = alpha;
            CriterionReport cover = check_state_cover(space, alpha, fs);
            av.full = check_full(space, alpha).holds;
            if (opt.corrupt_full_check && idx == 0 && alpha == 0) av.full = !av.full;
            av.cover = cover.holds;
            av.attain = check_attainment(space, alpha, rng, opt.state_samples, cover);
            av.isometric_everywhere = rep.isometric_everywhere[alpha];
            av.gk_zero_gap = check_gk_leg(space, alpha, rng, opt.gk_samples, fs, cover);
            av.additivity_ok = check_additivity_leg(space, alpha, rng, opt.additivity_samples, fs);
            av.increasing = is_increasing(space, alpha).increasing;
            av.positives_isometric = rep.isometric_on_positives[alpha];
            av.agree = av.full == av.cover && av.cover == av.attain &&
                       av.attain == av.isometric_everywhere && av.gk_zero_gap == av.cover &&
                       av.additivity_ok && (!av.increasing || av.positives_isometric);
            iv.agree = iv.agree && av.agree;
            iv.alphas.push_back(av);
        }
        iv.bnn_routes_agree = check_bnn_leg(space, rng, opt.bnn_samples);
        iv.agree = iv.agree && iv.bnn_routes_agree;
        if (!iv.agree && report.all_agree) {
            report.all_agree = false;
            report.first_disagreement = inst.name;
            report.reproducer = serialize_instance(inst);
        }
        report.instances.push_back(std::move(iv));
    }
    report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return report;
}

std::string SuiteReport::to_json(bool include_timing) const {
    nlohmann::json j;
    j["format"] = 1;
    j["verdict"] = all_agree ? "all-agree" : "disagreement";
    if (!all_agree) {
        j["first_disagreement"] = first_disagreement;
        j["reproducer"] = nlohmann::json::parse(reproducer);
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const InstanceVerdict& iv : instances) {
        nlohmann::json ij;
        ij["name"] = iv.name;
        ij["agree"] = iv.agree;
        ij["bnn_routes_agree"] = iv.bnn_routes_agree;
        nlohmann::json alphas = nlohmann::json::array();
        for (const AlphaVerdict& av : iv.alphas) {
            alphas.push_back({{"alpha", av.alpha},
                              {"full", av.full},
                              {"cover", av.cover},
                              {"attain", av.attain},
                              {"isometric_everywhere", av.isometric_everywhere},
                              {"gk_zero_gap", av.gk_zero_gap},
                              {"additivity_ok", av.additivity_ok},
                              {"increasing", av.increasing},
                              {"positives_isometric", av.positives_isometric},
                              {"agree", av.agree}});
        }
        ij["alphas"] = alphas;
        arr.push_back(ij);
    }
    j["instances"] = arr;
    if (include_timing) j["timing_ms"] = timing_ms;
    return j.dump(2) + "\n";
}

}  // namespace ocs
