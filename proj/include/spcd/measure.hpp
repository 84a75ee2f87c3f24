#pragma once

// Ordinary alpha-Lebesgue measures of alpha-rectangles and the scale factors
// by which linear flows multiply them. The measures themselves are never
// constructed; only rectangle values and scale factors are computed.

#include <cstddef>

#include "spcd/classification.hpp"
#include "spcd/extended_measure.hpp"
#include "spcd/flow_models.hpp"
#include "spcd/series.hpp"

namespace spcd {

struct RectangleSpec {
    AlphaBlocking alpha;
    /// Volume m^{n_k}(R_k) of cell k; must be nonnegative.
    ProductFactors cell_volumes = ProductFactors::direct(SequenceSpec({}, tail::Constant{1.0}));
};

/// Ordinary product of the cell volumes. Throws InvalidRectangle if that
/// product does not exist, is infinite, or has a negative factor.
[[nodiscard]] ExtendedMeasure rectangle_measure(const RectangleSpec& rect, const SumOptions& opts = {});

/// Rectangle given by one side length per coordinate; cell k is the box over
/// the coordinates in F_k, so its volume is the block product of sides.
[[nodiscard]] ExtendedMeasure rectangle_measure_from_sides(const AlphaBlocking& alpha,
                                                           const ProductFactors& sides,
                                                           const SumOptions& opts = {});

/// e^{t Lambda} scale factor for t >= 0 given a classification.
/// Always Finite(1) at t = 0. Throws std::invalid_argument for t < 0.
[[nodiscard]] ExtendedMeasure liouville_factor(const FlowClass& flow_class, double t);

[[nodiscard]] ExtendedMeasure liouville_factor(const FlowModel& model, double t, MeasureFlavor flavor,
                                               const SumOptions& opts = {});

struct JacobianCheck {
    std::size_t cells = 0;
    double t = 0.0;
    double predicted = 0.0;  // t * sum_{k < cells} d_k
    double computed = 0.0;   // log|det| of the truncated Jacobian built from evolve()
};

/// Builds the Jacobian of evolve() on a truncation with `cells` cells column
/// by column from basis vectors, checks it is block diagonal, and sums the
/// log-determinants of its cells. Cells whose determinant leaves double range
/// are evaluated at t / 2^j and rescaled, using the flow property.
[[nodiscard]] JacobianCheck truncated_jacobian_check(const FlowModel& model, double t, std::size_t cells);

}  // namespace spcd
