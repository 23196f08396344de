/*
 * maximize.hpp - maximization of the discriminant distance on the unit
 * Bombieri sphere.
 *
 * The ascent direction is D = P1 - P where P1 is the orthogonal
 * projection of P onto the span of the contact radii at its
 * quasi-singular points; D = 0 characterizes local maximizers, and a
 * short step along D raises dist(P, Delta) to first order.  Between
 * full multi-start searches the quasi-singular points are tracked by
 * Newton's method warm-started from their previous locations.
 */
#ifndef DISCDIST_MAXIMIZE_HPP
#define DISCDIST_MAXIMIZE_HPP

#include <string>
#include <utility>
#include <vector>

#include "discdist/classify.hpp"
#include "discdist/distance.hpp"
#include "discdist/poly.hpp"

namespace discdist {

struct MaximizerConfig {
    // Iteration cap for run().
    int max_iters = 500;
    // Convergence threshold on the squared norm of D.
    double residual_tol = 1e-12;
    // Cadence of full multi-start re-searches of the quasi-singular
    // set; pure Newton tracking in between; 0 disables refreshes.
    int refresh_every = 25;
    // Cadence of checkpoint writes to checkpoint_path; 0 disables.
    int checkpoint_every = 0;
    std::string checkpoint_path;
    // Settings for the inner distance searches and point tracking.
    SearchConfig search;
    double classify_tol = 1e-8;

    // Throws ShapeError when a field is out of range.
    void validate() const;
};

// One iterate of the ascent.  P keeps unit Bombieri norm; qs holds the
// tracked near-minimal points, one per antipodal pair, sorted by delta,
// with radii[i] the contact radius at qs[i].c.  D projects P onto the
// radii of the distance realizers only (the leading entries whose delta
// ties the minimum): a binary form always lies in the span of the
// powers at all of its critical pairs, so projecting onto the whole
// tracked band would zero the ascent everywhere.  residual = ||D||^2
// vanishes exactly at local maximizers of the distance.
struct MaximizerState {
    HomogeneousPoly P;
    std::vector<QuasiSingularPoint> qs;
    std::vector<HomogeneousPoly> radii;
    HomogeneousPoly D;
    double residual = 0.0;
    double dist = 0.0;
    int iteration = 0;
    bool stalled = false;
    bool possibly_continuum = false;
    bool dependent_radii = false;

    explicit MaximizerState(HomogeneousPoly p)
        : P(std::move(p)), D(P.n(), P.d()) {}
};

struct AscentDirection {
    HomogeneousPoly D;
    double residual = 0.0;
    // True when the Gram matrix of the radii is rank deficient at the
    // relative cutoff 1e-10 (a continuum of minimizers makes the
    // sampled radii dependent); the projection uses a pseudo-inverse
    // and remains well defined.
    bool dependent_radii = false;
};

// Least-squares expression of P as a combination of d-th powers of
// linear forms at the quasi-singular points.
struct Certificate {
    std::vector<double> lambdas;
    double residual = 0.0;
};

// Summary row for a converged or stalled state.  Antipodal pairs of
// quasi-double points are counted by the sign of P there; a class of a
// continuum is rendered as "inf".  Quasi-cusp points are not counted.
struct TableRow {
    int degree = 0;
    double dist = 0.0;
    double residual = 0.0;
    int pairs_negative = 0;
    int pairs_positive = 0;
    bool negative_infinite = false;
    bool positive_infinite = false;

    // "<total> = <negative> + <positive>".
    std::string k_split() const;
};

// The projection of p onto span{contact_radius(p, qs[i].c)} minus p.
// Throws ShapeError when qs is empty.
AscentDirection ascent_direction(const HomogeneousPoly& p,
                                 const std::vector<QuasiSingularPoint>& qs);

// Normalizes p0, locates and classifies its distance minimizers, and
// assembles the starting state.  Throws DegenerateError when p0 = 0 or
// dist(p0, Delta) vanishes within tolerance.
MaximizerState initial_state(const HomogeneousPoly& p0,
                             const MaximizerConfig& cfg);

// One accepted ascent step: tries P + t D renormalized, halving t up
// to 30 times until the tracked distance strictly increases.  Returns
// the state unchanged when D = 0, and a copy with stalled = true when
// no step is accepted.
MaximizerState step(const MaximizerState& state, double t,
                    const MaximizerConfig& cfg);

// Full ascent from p0; returns the trajectory of accepted states
// starting with the initial one.  Stops when residual <= residual_tol,
// the iteration cap is reached, or a stall occurs (flagged on the last
// entry).
std::vector<MaximizerState> run(const HomogeneousPoly& p0,
                                const MaximizerConfig& cfg);

// Continuation of run() from a previously built or restored state.
std::vector<MaximizerState> run_from(MaximizerState state,
                                     const MaximizerConfig& cfg);

// Coefficients of the least-squares fit P ~ sum lambda_i <x|c_i>^d and
// the Bombieri norm of the misfit.  Requires every point quasi-double;
// a quasi-cusp raises ClassifyError.
Certificate certificate(const HomogeneousPoly& p,
                        const std::vector<QuasiSingularPoint>& qs);

TableRow report_row(const MaximizerState& state);

// Checkpoint JSON: polynomial in the text format, the quasi-singular
// points, iteration counter, and the full configuration.  Reloading
// reconstructs radii, D, residual, and dist from the stored data, so
// the round trip is exact on one backend.
void save_checkpoint(const MaximizerState& state, const MaximizerConfig& cfg,
                     const std::string& path);
std::pair<MaximizerState, MaximizerConfig> load_checkpoint(
    const std::string& path);

} // namespace discdist

#endif // DISCDIST_MAXIMIZE_HPP
