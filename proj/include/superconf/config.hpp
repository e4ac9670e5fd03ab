#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include <superconf/moebius.hpp>
#include <superconf/weierstrass.hpp>

namespace superconf {

/// Source of the base surface f.
struct Seed {
    enum class Kind { Spec, Holomorphic, Phi };
    Kind kind = Kind::Spec;
    IsotropicSpec spec;
    /// Components w_k for Kind::Holomorphic, the final phi for Kind::Phi.
    CVecPoly curve;

    IsotropicCurve build() const;
};

/// holo3: (z, z^2, (2/3) z^3) in R^6 through the recursion (2-isotropic).
/// holo4: the holomorphic curve (z, z^2, z^3, z^4) in R^8 (3-isotropic).
/// noniso: seed alpha0 = (1, z) in R^6 with m = 1 (1-isotropic only).
Seed preset_seed(const std::string &name);
std::vector<std::string> preset_names();

struct Tolerances {
    double isotropy = 1e-10;
    double minimal_f = 1e-9;
    double gauss = 1e-6;
    double circle = 1e-8;
    double wintgen = 1e-7;
    double refute = 1e-3;
    double refute_fraction = 0.9;
    double conformal = 1e-8;
    double factor = 1e-7;
    double normal_bundle = 1e-8;
    double connection = 1e-8;
    double mean_curvature = 1e-7;
    double laplacian = 1e-6;
    double structure = 1e-7;
    double structure_c = 1e-6;
    double nonminimal = 1e-3;
    double agreement = 0.99;
    double inverted_minimal = 1e-7;
    double finite_difference = 1e-5;

    /// Name -> member table used for JSON and flag overrides.
    std::map<std::string, double Tolerances::*> fields() const;
};

struct LatticeSpec {
    /// Centers per axis; the lattice has per_axis^3 centers.
    int per_axis = 5;
    /// Spacing as a fraction of the diameter of g over the grid.
    double spacing = 0.5;
};

struct RunConfig {
    std::string preset = "holo3";
    Seed seed = preset_seed("holo3");
    double c = 1.0;
    std::optional<Eigen::VectorXd> v;
    Grid grid;
    int jet_order = 4;
    Tolerances tol;
    LatticeSpec lattice;
    std::optional<InversionSpec> inversion;
    std::optional<Eigen::MatrixXd> projection;
    std::vector<std::string> checks;
    std::uint64_t rng_seed = 20240917;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;
};

/// Complex scalars are [re, im] pairs; a polynomial is a list of them.
nlohmann::json to_json(const CPoly &p);
nlohmann::json to_json(const CVecPoly &v);
CPoly cpoly_from_json(const nlohmann::json &j, const std::string &field);
CVecPoly cvecpoly_from_json(const nlohmann::json &j, const std::string &field);

nlohmann::json to_json(const Seed &s);
Seed seed_from_json(const nlohmann::json &j);

nlohmann::json to_json(const RunConfig &c);
/// Missing keys keep their defaults. Throws ConfigError.
RunConfig config_from_json(const nlohmann::json &j);
RunConfig load_config(const std::string &path);

/// Parses "x0,x1,y0,y1,nx,ny" into the grid, keeping its excluded disks.
void apply_grid_string(Grid &grid, const std::string &text);

/// FNV-1a 64 bit hash of the canonical JSON dump.
std::uint64_t spec_hash(const RunConfig &c);

} // namespace superconf
