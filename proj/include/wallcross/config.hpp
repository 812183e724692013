#pragma once

#include "wallcross/gitfan.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace wallcross {

constexpr int kSchemaVersion = 1;

struct Tolerances {
    double uhfm = 1e-9;
    double pairing = 1e-8;
    double mb = 1e-7;
    double ode = 1e-12;
    double lifts = 1e-12;
    double quadrature = 1e-11;
    double pole_clearance = 1e-3;
};

struct JobConfig {
    std::string name;
    GITData git;
    RatVec omega_plus, omega_minus;
    int trunc = 40;         // K
    int degree_bound = 2;   // bound on D_j . d_plus for starting degrees
    int samples = 0;        // 0: per-suite default
    std::uint64_t seed = 7;
    double z_min = 4.0, z_max = 8.0;  // annulus for z samples
    Tolerances tol;
    double sigma_lo = -0.45, sigma_hi = -0.05, t_max = 40.0;
    std::string canonical;  // normalized JSON used for the hash
};

// Throws ConfigError naming the offending field.
JobConfig parse_config(const std::string& text);
JobConfig load_config(const std::string& path);
std::string config_hash(const JobConfig& cfg);  // 16 hex digits

}  // namespace wallcross
