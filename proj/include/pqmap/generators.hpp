#pragma once

#include <cstdint>
#include <string>

#include "pqmap/curvature.hpp"
#include "pqmap/map.hpp"

namespace pqmap {

// Deterministic 64-bit generator (splitmix64).  We roll our own bounded
// sampling so corpus output is bit-identical across platforms; the standard
// distributions make no such promise.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform-ish integer in [0, n); n > 0.  Modulo bias is irrelevant for
    // corpus generation and keeps the stream stable.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

  private:
    std::uint64_t state_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    Rng rng(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
    return rng.next();
}

// The standard map S^p_n: the n-fold ball growth in the regular p-gon
// tessellation.  S^4_n is the 2n x 2n square grid, S^3_n the side-n
// triangulated hexagon, S^6_n the weak dual of the triangle-seeded growth.
// n = 0 gives the one-vertex map.
PlanarMap gen_standard(int p, int n);

// Seeded random (p,q)-map: starts from gen_standard(p, 2) and applies
// `steps` validity-preserving local moves, each keeping condition (B).
PlanarMap gen_random_pq(const PQParams& pq, int steps, std::uint64_t seed);

struct PerturbResult {
    PlanarMap map;
    int flat_ball_radius_before = 0;
    int flat_ball_radius_after = 0;
};

// Injects `defect_count` negative-curvature defects into a (p,q)-map while
// keeping the (p,q) property and condition (B): each defect is either an
// interior vertex of degree q+1 or an interior face of degree 2p-2.
// Throws when the map lacks interior room for the requested count.
PerturbResult perturb_defects(const PlanarMap& m, const PQParams& pq, int defect_count,
                              std::uint64_t seed);

// Local validity-preserving moves, exposed for tests and adversarial
// corpora.  Each rebuilds the map and revalidates.
PlanarMap attach_boundary_face(const PlanarMap& m, DartId outer_dart, int face_degree);
PlanarMap merge_faces_at(const PlanarMap& m, EdgeId e);
PlanarMap contract_interior_edge(const PlanarMap& m, EdgeId e);
PlanarMap split_boundary_edge_at(const PlanarMap& m, DartId outer_dart);

// Parses generator specs of the form "standard:p,n", "random:p,q[,steps]"
// and "perturb:p,q[,defects]"; used by the corpus runner and the CLI.
struct GenSpec {
    enum class Kind { Standard, Random, Perturb };
    Kind kind;
    int p = 4;
    int q = 4;
    int size = 2;     // n for standard
    int steps = 40;   // moves for random
    int defects = 1;  // for perturb
};

GenSpec parse_gen_spec(const std::string& text);
PlanarMap run_gen_spec(const GenSpec& spec, std::uint64_t seed);

}  // namespace pqmap
