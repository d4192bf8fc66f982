// catalog.hpp — parameterized generators for the studied coupling
// configurations, each carrying its analytic expected dark states where the
// configuration's closed form applies.

#pragma once

#include "core/system_model.hpp"
#include "core/types.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace darkmap::catalog {

struct ExpectedDark {
    int count = 0;
    Matrix bare_lower;  // N_l x k analytic vectors over the bare lower states (k may be 0
                        // when only the count is known)
};

struct CatalogEntry {
    std::string name;
    SystemSpec spec;  // rotating mode
    std::vector<int> upper;
    std::optional<ExpectedDark> expected;
    std::string note;
};

// --- three-level systems (one upper, two lowers) ---

enum class ThreeLevelKind { delta, lambda, xi, vee };

struct ThreeLevelParams {
    Complex omega12{0.0, 0.0};
    Complex omega13{1.0, 0.0};
    Complex omega23{2.0, 0.0};
    double delta13 = 0.3;
    double delta23 = 0.3;
};

CatalogEntry three_level(ThreeLevelKind kind, const ThreeLevelParams& p);

// --- four-level systems ---

// One upper state |4>, symmetric real coupling among the three lowers, equal
// detunings of the lowers against |4>.
struct FourConfig1Params {
    double lower_coupling = 0.5;
    double delta = 0.3;
    Complex omega14{1.0, 0.0};
    Complex omega24{2.0, 0.0};
    Complex omega34{3.0, 0.0};
};

CatalogEntry four_level_config1(const FourConfig1Params& p);

// Two upper states {|4>, |3>} with the (3,4) coupling absent, two lowers with
// equal detunings against |4|.
struct FourConfig2Params {
    Complex omega12{0.0, 0.0};
    Complex omega13{1.0, 0.0};
    Complex omega23{2.0, 0.0};
    Complex omega14{1.0, 0.0};
    Complex omega24{2.0, 0.0};
    double delta = 0.3;
    double delta34 = 0.7;
};

CatalogEntry four_level_config2(const FourConfig2Params& p);

// --- five-level systems ---

// One upper state |5>, two-parameter symmetric real couplings among the four
// lowers (omega1 on the ring, omega2 on the diagonals), equal detunings.
struct FiveConfig1Params {
    double omega1 = 0.3;
    double omega2 = 0.7;
    double delta = 0.4;
    Complex omega45{1.0, 0.0};
    Complex omega35{2.0, 0.0};
    Complex omega25{3.0, 0.0};
    Complex omega15{5.0, 0.0};
};

CatalogEntry five_level_config1(const FiveConfig1Params& p);

// Two uppers {|5>, |4>} (their mutual coupling absent), three lowers with
// symmetric real coupling and equal detunings.
struct FiveConfig2Params {
    double lower_coupling = 0.5;
    double delta = 0.3;
    double delta45 = 0.6;
    Complex omega35{1.0, 0.0};
    Complex omega25{1.0, 0.0};
    Complex omega15{2.0, 0.0};
    Complex omega34{0.5, 0.0};
    Complex omega24{0.5, 0.0};
    Complex omega14{1.0, 0.0};
};

CatalogEntry five_level_config2(const FiveConfig2Params& p);

// Three uppers {|5>, |4>, |3>} with symmetric real coupling and zero mutual
// detunings, two lowers with equal detunings.
struct FiveConfig3Params {
    double upper_coupling = 0.5;
    double delta = 0.3;
    Complex omega12{0.0, 0.0};
    Complex omega25{2.0, 0.0};
    Complex omega15{1.0, 0.0};
    Complex omega24{4.0, 0.0};
    Complex omega14{2.0, 0.0};
    Complex omega23{6.0, 0.0};
    Complex omega13{3.0, 0.0};
};

CatalogEntry five_level_config3(const FiveConfig3Params& p);

// --- N-level configurations ---

// Star graph: one upper |N>, N-1 lowers coupled only to it. detunings[r-1]
// and couplings[r-1] belong to level r.
CatalogEntry multipod(int levels, const std::vector<double>& detunings,
                      const std::vector<Complex>& couplings);

// N-2 uppers {|N>..|3>} and two lowers {|2>, |1>}; to_l1[j-3] couples |2> to
// |j>, to_l2[j-3] couples |1> to |j>.
CatalogEntry multi_lambda(int levels, double delta1, double delta2,
                          const std::vector<Complex>& to_l1, const std::vector<Complex>& to_l2);

// Zigzag chains. The zigzag list walks the chain from level N downward,
// alternating the two legs of each upper state:
//   lambda_chain (N odd,  N_l = N_u + 1): (l_1,u_1), (l_2,u_1), (l_2,u_2), (l_3,u_2), ...
//   n_chain      (N even, N_l = N_u):     (l_1,u_1), (l_1,u_2), (l_2,u_2), (l_2,u_3), ...
//   v_chain      (N odd,  N_l = N_u - 1): (l_1,u_1), (l_1,u_2), (l_2,u_2), (l_2,u_3), ...
// with u_k = |N+1-k| and l_k the k-th lower state in descending label order.
CatalogEntry lambda_chain(int levels, double delta, const std::vector<Complex>& zigzag);
CatalogEntry n_chain(int levels, double delta, const std::vector<Complex>& zigzag);
CatalogEntry v_chain(int levels, double delta, const std::vector<Complex>& zigzag);

// Closed-form unique dark state of the fully degenerate zigzag chain with
// N_l = N_u + 1, over the lower states l_1..l_{(N+1)/2}.
Vector analytic_lambda_chain_dark(int levels, const std::vector<Complex>& zigzag);

// --- collective dark-state polariton snapshot ---

struct DspParams {
    double g = 0.02;             // single-atom field coupling
    int n_atoms = 1000;          // ensemble size
    double omega_control = 0.5;  // control-field Rabi frequency at the snapshot
    int n_excitations = 2;       // conserved excitation number

    double mixing_angle() const;       // atan2(g sqrt(N), Omega)
    double effective_coupling() const; // sqrt(g^2 N + Omega^2)
};

struct DspMatrix {
    Matrix coupling;  // n x (n+1), row-echelon
    std::vector<std::string> upper_labels;
    std::vector<std::string> lower_labels;
};

// Exact matrix uses sqrt(N-m+1); the large-N flag replaces it by sqrt(N).
DspMatrix dsp_coupling_matrix(const DspParams& p, bool large_n);

// Binomial coefficient vector over |c^i, n-i>, unit norm.
Vector dsp_dark_polariton(int n, double theta);

CatalogEntry dsp(const DspParams& p, bool large_n);

// --- name registry (CLI surface) ---

using ParamMap = std::map<std::string, std::string, std::less<>>;

std::vector<std::string> names();
std::string describe();
CatalogEntry build(const std::string& name, const ParamMap& params, bool large_n,
                   std::optional<uint64_t> seed);

// Nonzero draws with magnitude in [0.25, 2]; complex phases optional.
std::vector<Complex> random_nonzero_couplings(std::mt19937_64& rng, int count,
                                              bool complex_phase);

}  // namespace darkmap::catalog
