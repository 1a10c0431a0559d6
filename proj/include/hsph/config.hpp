#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsph/common.hpp"

namespace hsph {

/// Configuration error naming the offending field.
class config_error : public error {
public:
    config_error(std::string field, const std::string& message)
        : error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct RadialGridConfig {
    double r_max = 8.0;
    double t_max = 10.0;
    int n_r = 160;
    int n_t = 200;
    bool operator==(const RadialGridConfig&) const = default;
};

struct FanGridConfig {
    int j_max = 8;
    double lambda_min = 0.3;
    double lambda_max = 3.0;
    int n_lambda = 241;
    bool operator==(const FanGridConfig&) const = default;
};

/// Closed enumeration of test functions. Radial kinds: ball, annulus,
/// gaussian. Fan kinds: fan_gaussian (per-ray amplitudes times a Gaussian
/// lambda profile), fan_band (per-ray sqrt-edge band), fan_point (single
/// node). tensor_gh is the growth-demo pair and only used by holo-demo.
struct TestFunctionConfig {
    std::string kind = "gaussian";
    double radius = 1.0;                              // ball
    double r1 = 1.0, r2 = 2.0;                        // annulus
    double a = 0.5;                                   // gaussian exponent
    double lambda0 = 1.5, sigma = 0.3;                // fan_gaussian
    std::vector<double> ray_amplitudes = {1.0, 0.6, 0.3};
    double band_lo = 1.0, band_hi = 2.0;              // fan_band
    int point_j = 0;
    double point_lambda = 1.0;                        // fan_point (snapped to a node)
    bool operator==(const TestFunctionConfig&) const = default;
};

struct NormConfig {
    double p = 2.0;
    double beta = -1.0; // < 0 means the default (n+2)/p + 1
    bool operator==(const NormConfig&) const = default;
};

struct EvalPoint {
    double xi_re = 0.0, xi_im = 0.0;
    double lambda_re = 0.0, lambda_im = 0.0;
    double r = 0.0, t = 0.0;
    bool operator==(const EvalPoint&) const = default;
};

struct HoloConfig {
    double lambda_lo = 5.0, lambda_hi = 30.0;
    int count = 26;
    int n_r = 800, n_t = 400;
    bool operator==(const HoloConfig&) const = default;
};

struct DiracConfig {
    double r_lo = 0.2, r_hi = 4.0;
    int count = 20;
    bool operator==(const DiracConfig&) const = default;
};

/// Declarative description of one CLI experiment. Round-trips losslessly
/// through JSON (schema field versions the layout).
struct ExperimentConfig {
    std::string schema = "hsph-experiment/1";
    int n = 1;
    RadialGridConfig radial;
    FanGridConfig fan;
    TestFunctionConfig test_function;
    int powers_j_max = 12;
    NormConfig norm;
    std::string method = "exact_aj"; // exact_aj|discrete_mplus|fan_side|space_side
    std::string limit = "ratio";     // ratio|root
    std::vector<EvalPoint> eval_points;
    HoloConfig holo;
    DiracConfig dirac;
    bool operator==(const ExperimentConfig&) const = default;
};

inline double resolve_beta(const NormConfig& norm, int n) {
    if (norm.beta >= 0.0) return norm.beta;
    if (std::isinf(norm.p)) return 1.0;
    return (n + 2.0) / norm.p + 1.0;
}

// --- JSON mapping ---------------------------------------------------------

using nlohmann::json;

inline void to_json(json& j, const RadialGridConfig& c) {
    j = json{{"r_max", c.r_max}, {"t_max", c.t_max}, {"n_r", c.n_r}, {"n_t", c.n_t}};
}
inline void from_json(const json& j, RadialGridConfig& c) {
    c.r_max = j.value("r_max", c.r_max);
    c.t_max = j.value("t_max", c.t_max);
    c.n_r = j.value("n_r", c.n_r);
    c.n_t = j.value("n_t", c.n_t);
}

inline void to_json(json& j, const FanGridConfig& c) {
    j = json{{"j_max", c.j_max},
             {"lambda_min", c.lambda_min},
             {"lambda_max", c.lambda_max},
             {"n_lambda", c.n_lambda}};
}
inline void from_json(const json& j, FanGridConfig& c) {
    c.j_max = j.value("j_max", c.j_max);
    c.lambda_min = j.value("lambda_min", c.lambda_min);
    c.lambda_max = j.value("lambda_max", c.lambda_max);
    c.n_lambda = j.value("n_lambda", c.n_lambda);
}

inline void to_json(json& j, const TestFunctionConfig& c) {
    j = json{{"kind", c.kind},
             {"radius", c.radius},
             {"r1", c.r1},
             {"r2", c.r2},
             {"a", c.a},
             {"lambda0", c.lambda0},
             {"sigma", c.sigma},
             {"ray_amplitudes", c.ray_amplitudes},
             {"band_lo", c.band_lo},
             {"band_hi", c.band_hi},
             {"point_j", c.point_j},
             {"point_lambda", c.point_lambda}};
}
inline void from_json(const json& j, TestFunctionConfig& c) {
    c.kind = j.value("kind", c.kind);
    c.radius = j.value("radius", c.radius);
    c.r1 = j.value("r1", c.r1);
    c.r2 = j.value("r2", c.r2);
    c.a = j.value("a", c.a);
    c.lambda0 = j.value("lambda0", c.lambda0);
    c.sigma = j.value("sigma", c.sigma);
    c.ray_amplitudes = j.value("ray_amplitudes", c.ray_amplitudes);
    c.band_lo = j.value("band_lo", c.band_lo);
    c.band_hi = j.value("band_hi", c.band_hi);
    c.point_j = j.value("point_j", c.point_j);
    c.point_lambda = j.value("point_lambda", c.point_lambda);
}

inline void to_json(json& j, const NormConfig& c) {
    j = json{{"p", std::isinf(c.p) ? json("inf") : json(c.p)}, {"beta", c.beta}};
}
inline void from_json(const json& j, NormConfig& c) {
    if (j.contains("p")) {
        if (j.at("p").is_string())
            c.p = std::numeric_limits<double>::infinity();
        else
            c.p = j.at("p").get<double>();
    }
    c.beta = j.value("beta", c.beta);
}

inline void to_json(json& j, const EvalPoint& c) {
    j = json{{"xi_re", c.xi_re},   {"xi_im", c.xi_im}, {"lambda_re", c.lambda_re},
             {"lambda_im", c.lambda_im}, {"r", c.r},   {"t", c.t}};
}
inline void from_json(const json& j, EvalPoint& c) {
    c.xi_re = j.value("xi_re", 0.0);
    c.xi_im = j.value("xi_im", 0.0);
    c.lambda_re = j.value("lambda_re", 0.0);
    c.lambda_im = j.value("lambda_im", 0.0);
    c.r = j.value("r", 0.0);
    c.t = j.value("t", 0.0);
}

inline void to_json(json& j, const HoloConfig& c) {
    j = json{{"lambda_lo", c.lambda_lo},
             {"lambda_hi", c.lambda_hi},
             {"count", c.count},
             {"n_r", c.n_r},
             {"n_t", c.n_t}};
}
inline void from_json(const json& j, HoloConfig& c) {
    c.lambda_lo = j.value("lambda_lo", c.lambda_lo);
    c.lambda_hi = j.value("lambda_hi", c.lambda_hi);
    c.count = j.value("count", c.count);
    c.n_r = j.value("n_r", c.n_r);
    c.n_t = j.value("n_t", c.n_t);
}

inline void to_json(json& j, const DiracConfig& c) {
    j = json{{"r_lo", c.r_lo}, {"r_hi", c.r_hi}, {"count", c.count}};
}
inline void from_json(const json& j, DiracConfig& c) {
    c.r_lo = j.value("r_lo", c.r_lo);
    c.r_hi = j.value("r_hi", c.r_hi);
    c.count = j.value("count", c.count);
}

inline void to_json(json& j, const ExperimentConfig& c) {
    j = json{{"schema", c.schema},
             {"n", c.n},
             {"radial", c.radial},
             {"fan", c.fan},
             {"test_function", c.test_function},
             {"powers_j_max", c.powers_j_max},
             {"norm", c.norm},
             {"method", c.method},
             {"limit", c.limit},
             {"eval_points", c.eval_points},
             {"holo", c.holo},
             {"dirac", c.dirac}};
}
inline void from_json(const json& j, ExperimentConfig& c) {
    c.schema = j.value("schema", c.schema);
    c.n = j.value("n", c.n);
    if (j.contains("radial")) j.at("radial").get_to(c.radial);
    if (j.contains("fan")) j.at("fan").get_to(c.fan);
    if (j.contains("test_function")) j.at("test_function").get_to(c.test_function);
    c.powers_j_max = j.value("powers_j_max", c.powers_j_max);
    if (j.contains("norm")) j.at("norm").get_to(c.norm);
    c.method = j.value("method", c.method);
    c.limit = j.value("limit", c.limit);
    if (j.contains("eval_points")) j.at("eval_points").get_to(c.eval_points);
    if (j.contains("holo")) j.at("holo").get_to(c.holo);
    if (j.contains("dirac")) j.at("dirac").get_to(c.dirac);
}

inline void validate(const ExperimentConfig& c) {
    if (c.schema != "hsph-experiment/1")
        throw config_error("schema", "unknown schema '" + c.schema + "'");
    if (c.n < 1) throw config_error("n", "must be >= 1");
    if (!(c.radial.r_max > 0.0)) throw config_error("radial.r_max", "must be > 0");
    if (!(c.radial.t_max > 0.0)) throw config_error("radial.t_max", "must be > 0");
    if (c.radial.n_r < 1) throw config_error("radial.n_r", "must be >= 1");
    if (c.radial.n_t < 1) throw config_error("radial.n_t", "must be >= 1");
    if (c.fan.j_max < 0) throw config_error("fan.j_max", "must be >= 0");
    if (!(c.fan.lambda_min > 0.0)) throw config_error("fan.lambda_min", "must be > 0");
    if (!(c.fan.lambda_max > c.fan.lambda_min))
        throw config_error("fan.lambda_max", "must exceed fan.lambda_min");
    if (c.fan.n_lambda < 3 || c.fan.n_lambda % 2 == 0)
        throw config_error("fan.n_lambda", "must be odd and >= 3");
    static const std::vector<std::string> kinds{"ball",        "annulus",  "gaussian",
                                                "tensor_gh",   "fan_gaussian", "fan_band",
                                                "fan_point"};
    if (std::find(kinds.begin(), kinds.end(), c.test_function.kind) == kinds.end())
        throw config_error("test_function.kind", "unknown kind '" + c.test_function.kind + "'");
    if (c.test_function.kind == "ball" && !(c.test_function.radius > 0.0))
        throw config_error("test_function.radius", "must be > 0");
    if (c.test_function.kind == "annulus" && !(c.test_function.r2 > c.test_function.r1 &&
                                               c.test_function.r1 > 0.0))
        throw config_error("test_function.r1", "need 0 < r1 < r2");
    if (c.powers_j_max < 2) throw config_error("powers_j_max", "must be >= 2");
    if (!(c.norm.p >= 1.0)) throw config_error("norm.p", "must be >= 1 (or inf)");
    static const std::vector<std::string> methods{"exact_aj", "discrete_mplus", "fan_side",
                                                  "space_side"};
    if (std::find(methods.begin(), methods.end(), c.method) == methods.end())
        throw config_error("method", "unknown method '" + c.method + "'");
    if (c.limit != "ratio" && c.limit != "root")
        throw config_error("limit", "must be 'ratio' or 'root'");
    if (c.holo.count < 1) throw config_error("holo.count", "must be >= 1");
    if (!(c.holo.lambda_hi >= c.holo.lambda_lo))
        throw config_error("holo.lambda_hi", "must be >= holo.lambda_lo");
    if (c.dirac.count < 1) throw config_error("dirac.count", "must be >= 1");
}

} // namespace hsph
