// Python bindings for the core operations: character-theoretic branch
// classification, the three random models, and the Monte Carlo layer.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rmf/experiments.hpp"
#include "rmf/tau.hpp"

namespace py = pybind11;
using namespace rmf;

namespace {

py::object int128_to_pyint(int128 value) {
    return py::module_::import("builtins").attr("int")(rmf::to_string(value));
}

py::dict partial_sum_result_to_dict(const PartialSumResult& result) {
    py::dict out;
    out["x"] = result.x;
    out["value"] = result.value.imag() == 0.0 ? py::cast(result.value.real())
                                              : py::cast(result.value);
    out["terms"] = result.terms;
    out["error_bound"] = result.error_bound;
    return out;
}

py::dict decomposition_to_dict(const CharacterTable& table, const DecompositionReport& report) {
    py::dict out;
    out["modulus"] = report.modulus;
    out["set"] = report.members;
    py::list coefficients;
    for (const auto& coeff : report.coefficients) {
        py::dict entry;
        entry["character"] = coeff.character;
        entry["kind"] = to_string(coeff.kind);
        entry["re"] = coeff.approx.real();
        entry["im"] = coeff.approx.imag();
        entry["is_zero"] = coeff.is_zero;
        if (coeff.kind != CharacterKind::Complex) {
            entry["exact"] = coeff.rational_value.to_string();
        }
        coefficients.append(entry);
    }
    out["coefficients"] = coefficients;
    out["verdict"] = to_string(report.verdict);
    if (report.witness) {
        out["witness"] = *report.witness;
        out["witness_kind"] = to_string(table.kind(*report.witness));
    } else {
        out["witness"] = py::none();
    }
    return out;
}

TrialConfig config_from_kwargs(const std::string& model, std::uint64_t m,
                               const std::vector<std::uint64_t>& set, std::uint64_t n,
                               unsigned weight, const std::vector<std::uint64_t>& x_grid,
                               std::uint64_t trials, std::uint64_t seed, double z,
                               unsigned threads) {
    TrialConfig config;
    if (model == "residue") {
        config.model = ModelKind::Residue;
        config.modulus = m;
        config.residue_set = set;
    } else if (model == "cyclotomic") {
        config.model = ModelKind::Cyclotomic;
        config.field_index = n;
    } else if (model == "tau") {
        config.model = ModelKind::Tau;
        config.weight = weight;
    } else {
        throw std::invalid_argument("unknown model " + model);
    }
    config.x_grid = x_grid;
    config.trials = trials;
    config.seed = seed;
    config.z_score = z;
    config.threads = threads;
    return config;
}

py::dict split_to_dict(const SplitDiagnostics& diag) {
    py::dict out;
    out["main"] = diag.main_term.imag() == 0.0 ? py::cast(diag.main_term.real())
                                               : py::cast(diag.main_term);
    out["tail"] = diag.tail_term.imag() == 0.0 ? py::cast(diag.tail_term.real())
                                               : py::cast(diag.tail_term);
    out["direct"] = diag.direct_sum.imag() == 0.0 ? py::cast(diag.direct_sum.real())
                                                  : py::cast(diag.direct_sum);
    out["residual"] = diag.residual;
    out["gap"] = diag.identity_gap();
    out["exact_mode"] = diag.exact_mode;
    out["tail_terms"] = diag.tail_terms;
    return out;
}

}  // namespace

PYBIND11_MODULE(rmflab, module) {
    module.doc() = "simulation lab for weighted partial sums of random multiplicative functions";
    module.attr("__version__") = "0.1.0";

    py::class_<PrimeSieve>(module, "PrimeSieve")
        .def(py::init<std::uint64_t>(), py::arg("bound"))
        .def_property_readonly("bound", &PrimeSieve::bound)
        .def("smallest_prime_factor", &PrimeSieve::smallest_prime_factor, py::arg("n"))
        .def("is_prime", &PrimeSieve::is_prime, py::arg("n"))
        .def("primes", [](const PrimeSieve& sieve) { return sieve.primes(); })
        .def("prime_count", [](const PrimeSieve& sieve) { return sieve.primes().size(); });

    py::class_<SignAssignment>(module, "SignAssignment")
        .def(py::init<std::uint64_t, std::uint64_t, const PrimeSieve&>(), py::arg("seed"),
             py::arg("trial"), py::arg("sieve"), py::keep_alive<1, 4>())
        .def_static("constant", &SignAssignment::constant, py::arg("sieve"), py::arg("value"))
        .def_property_readonly("seed", &SignAssignment::seed)
        .def_property_readonly("trial", &SignAssignment::trial)
        .def("sign", &SignAssignment::sign, py::arg("sieve"), py::arg("p"))
        .def("set_sign", &SignAssignment::set_sign, py::arg("sieve"), py::arg("p"),
             py::arg("value"));

    py::class_<AngleAssignment>(module, "AngleAssignment")
        .def(py::init<std::uint64_t, std::uint64_t, const PrimeSieve&>(), py::arg("seed"),
             py::arg("trial"), py::arg("sieve"))
        .def_static("constant", &AngleAssignment::constant, py::arg("sieve"), py::arg("theta"))
        .def("angle", &AngleAssignment::angle, py::arg("sieve"), py::arg("p"));

    py::class_<CharacterTable>(module, "CharacterTable")
        .def(py::init<std::uint64_t>(), py::arg("m"))
        .def_property_readonly("modulus", &CharacterTable::modulus)
        .def_property_readonly("size", &CharacterTable::size)
        .def_property_readonly("zeta_order", &CharacterTable::zeta_order)
        .def("kind", [](const CharacterTable& t, std::uint64_t j) { return to_string(t.kind(j)); },
             py::arg("j"))
        .def("conjugate_index", &CharacterTable::conjugate_index, py::arg("j"))
        .def("value", &CharacterTable::value, py::arg("j"), py::arg("a"))
        .def("value_exponent",
             [](const CharacterTable& t, std::uint64_t j, std::uint64_t a) -> py::object {
                 const auto e = t.value_exponent(j, a);
                 return e ? py::cast(*e) : py::none();
             },
             py::arg("j"), py::arg("a"));

    module.def("unit_group", [](std::uint64_t m) {
        const auto group = build_unit_group(m);
        py::dict out;
        out["modulus"] = group.modulus;
        out["generators"] = group.generators;
        out["orders"] = group.orders;
        out["phi"] = group.group_order;
        out["exponent"] = group.exponent;
        return out;
    }, py::arg("m"));

    module.def("euler_phi", &euler_phi, py::arg("n"));

    module.def("decompose_indicator",
               [](std::uint64_t m, const std::vector<std::uint64_t>& members) {
                   const CharacterTable table(m);
                   return decomposition_to_dict(table,
                                                decompose_indicator(table, ResidueSet(m, members)));
               },
               py::arg("m"), py::arg("set"));

    module.def("classify_branch", [](std::uint64_t m, const std::vector<std::uint64_t>& members) {
        const auto branch = classify_branch(ResidueSet(m, members));
        py::dict out;
        out["verdict"] = to_string(branch.verdict);
        out["witness"] = branch.witness ? py::cast(*branch.witness) : py::none();
        if (branch.witness) out["witness_kind"] = to_string(branch.witness_kind);
        return out;
    }, py::arg("m"), py::arg("set"));

    module.def("partial_sum",
               [](const SignAssignment& signs, const PrimeSieve& sieve, std::uint64_t m,
                  const std::vector<std::uint64_t>& members, std::uint64_t x) {
                   return partial_sum_result_to_dict(
                       partial_sum(signs, sieve, ResidueSet(m, members), x));
               },
               py::arg("signs"), py::arg("sieve"), py::arg("m"), py::arg("set"), py::arg("x"));

    module.def("character_twisted_sum",
               [](const SignAssignment& signs, const PrimeSieve& sieve, const CharacterTable& table,
                  std::uint64_t j, std::uint64_t x) {
                   return character_twisted_sum(signs, sieve, table, j, x).value;
               },
               py::arg("signs"), py::arg("sieve"), py::arg("table"), py::arg("j"), py::arg("x"));

    module.def("prime_class_sum", &prime_class_sum, py::arg("signs"), py::arg("sieve"),
               py::arg("a"), py::arg("m"), py::arg("x"));

    module.def("truncated_euler_product", &truncated_euler_product, py::arg("signs"),
               py::arg("sieve"), py::arg("table"), py::arg("j"), py::arg("x"));

    module.def("smooth_tail_sum",
               [](const SignAssignment& signs, const PrimeSieve& sieve, const CharacterTable& table,
                  std::uint64_t j, std::uint64_t x, std::uint64_t cap) {
                   const auto tail = smooth_tail_sum(signs, sieve, table, j, x, cap);
                   py::dict out;
                   out["value"] = tail.value.imag() == 0.0 ? py::cast(tail.value.real())
                                                           : py::cast(tail.value);
                   out["residual"] = tail.residual;
                   out["terms"] = tail.terms;
                   return out;
               },
               py::arg("signs"), py::arg("sieve"), py::arg("table"), py::arg("j"), py::arg("x"),
               py::arg("cap"));

    module.def("steer_signs", [](double z, std::uint64_t a, std::uint64_t m, std::uint64_t x) {
        const PrimeSieve sieve(std::max<std::uint64_t>(x, 2));
        const auto steered = steer_signs(z, a, m, sieve);
        py::dict out;
        out["target"] = steered.target;
        out["final_sum"] = steered.final_sum;
        out["class_primes"] = steered.class_primes;
        py::list signs;
        for (const auto s : steered.signs) signs.append(static_cast<int>(s));
        out["signs"] = signs;
        py::list turning_points;
        for (const auto& tp : steered.turning_points) {
            py::dict entry;
            entry["prime"] = tp.prime;
            entry["class_index"] = tp.class_index;
            entry["class_sum"] = tp.class_sum;
            entry["residual"] = tp.residual;
            turning_points.append(entry);
        }
        out["turning_points"] = turning_points;
        return out;
    }, py::arg("z"), py::arg("a"), py::arg("m"), py::arg("x"));

    module.def("splitting_type", [](std::uint64_t n, std::uint64_t p) {
        const auto datum = splitting_type(n, p);
        py::dict out;
        out["p"] = datum.p;
        out["valuation"] = datum.valuation;
        out["e"] = datum.ramification;
        out["f"] = datum.inertia;
        out["r"] = datum.ideal_count;
        out["norm"] = datum.norm;
        return out;
    }, py::arg("n"), py::arg("p"));

    module.def("prime_ideal_slots", [](std::uint64_t n, std::uint64_t x) {
        const auto basis = prime_ideal_slots(n, x);
        py::list slots;
        for (const auto& slot : basis.slots) {
            slots.append(py::make_tuple(slot.prime, slot.ordinal, slot.norm));
        }
        return slots;
    }, py::arg("n"), py::arg("x"));

    module.def("count_ideals", &count_ideals, py::arg("n"), py::arg("x"));

    module.def("ideal_partial_sum",
               [](std::uint64_t seed, std::uint64_t trial, std::uint64_t n, std::uint64_t x) {
                   const auto basis = prime_ideal_slots(n, std::max<std::uint64_t>(x, 2));
                   const IdealSignAssignment signs(seed, trial, basis);
                   return partial_sum_result_to_dict(ideal_partial_sum(signs, basis, x));
               },
               py::arg("seed"), py::arg("trial"), py::arg("n"), py::arg("x"));

    module.def("sato_tate_cdf", &sato_tate_cdf, py::arg("theta"));
    module.def("sample_angle", &sample_angle, py::arg("u"));
    module.def("rho_normalized", &rho_normalized, py::arg("k"), py::arg("theta"));

    module.def("tau_partial_sum",
               [](const AngleAssignment& angles, const PrimeSieve& sieve, unsigned weight,
                  std::uint64_t x) {
                   return partial_sum_result_to_dict(
                       tau_partial_sum(angles, sieve, HeckeWeight{weight}, x));
               },
               py::arg("angles"), py::arg("sieve"), py::arg("weight"), py::arg("x"));

    module.def("tau_series", [](std::uint64_t length) {
        const auto fixture = tau_series(length);
        py::list out;
        for (const auto c : fixture.coefficients) out.append(int128_to_pyint(c));
        return out;
    }, py::arg("length"));

    module.def("wilson_interval", &wilson_interval, py::arg("count"), py::arg("trials"),
               py::arg("z"));
    module.def("hoeffding_bound", &hoeffding_bound, py::arg("lambda_"), py::arg("sum_sq"));
    module.def("decay_reference", &decay_reference, py::arg("x"), py::arg("C"));

    module.def("run_probability_experiment",
               [](const std::string& model, const std::vector<std::uint64_t>& x_grid,
                  std::uint64_t trials, std::uint64_t seed, std::uint64_t m,
                  const std::vector<std::uint64_t>& set, std::uint64_t n, unsigned weight,
                  double z, unsigned threads) {
                   const auto config = config_from_kwargs(model, m, set, n, weight, x_grid, trials,
                                                          seed, z, threads);
                   const auto result = run_probability_experiment(config);
                   py::list estimates;
                   for (const auto& est : result.estimates) {
                       py::dict entry;
                       entry["x"] = est.x;
                       entry["count"] = est.negatives;
                       entry["trials"] = est.trials;
                       entry["p_hat"] = est.p_hat;
                       entry["wilson_lo"] = est.wilson_lo;
                       entry["wilson_hi"] = est.wilson_hi;
                       estimates.append(entry);
                   }
                   py::dict out;
                   out["estimates"] = estimates;
                   out["warnings"] = result.warnings;
                   return out;
               },
               py::arg("model"), py::arg("x_grid"), py::arg("trials"), py::arg("seed") = 0,
               py::arg("m") = 1, py::arg("set") = std::vector<std::uint64_t>{1}, py::arg("n") = 1,
               py::arg("weight") = 11, py::arg("z") = 1.96, py::arg("threads") = 0);

    module.def("exhaustive_small_probability",
               [](const std::string& model, std::uint64_t x, std::uint64_t m,
                  const std::vector<std::uint64_t>& set, std::uint64_t n) {
                   const auto config = config_from_kwargs(model, m, set, n, 11, {x}, 1, 0, 1.96, 0);
                   const auto exact = exhaustive_small_probability(config, x);
                   return py::make_tuple(exact.negatives, exact.patterns);
               },
               py::arg("model"), py::arg("x"), py::arg("m") = 1,
               py::arg("set") = std::vector<std::uint64_t>{1}, py::arg("n") = 1);

    module.def("split_diagnostics",
               [](const std::string& model, std::uint64_t trial, std::uint64_t x,
                  std::uint64_t cap, std::uint64_t character, std::uint64_t seed, std::uint64_t m,
                  const std::vector<std::uint64_t>& set, std::uint64_t n) {
                   auto config = config_from_kwargs(model, m, set, n, 11, {x}, 1, seed, 1.96, 0);
                   return split_to_dict(split_diagnostics(config, trial, x, cap, character));
               },
               py::arg("model"), py::arg("trial"), py::arg("x"), py::arg("cap"),
               py::arg("character") = 0, py::arg("seed") = 0, py::arg("m") = 1,
               py::arg("set") = std::vector<std::uint64_t>{1}, py::arg("n") = 1);

    module.def("tau_split_diagnostics",
               [](const AngleAssignment& angles, const PrimeSieve& sieve, std::uint64_t x,
                  std::uint64_t cap) {
                   return split_to_dict(tau_split_diagnostics(angles, sieve, x, cap));
               },
               py::arg("angles"), py::arg("sieve"), py::arg("x"), py::arg("cap"));
}
