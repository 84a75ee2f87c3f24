#pragma once

// Linear flows on R^inf with closed-form, cell-wise evolution.
//
// Every model is block diagonal in its coordinate basis: cell 0 is a scalar
// and, for the Fourier family, cells k >= 1 are 2x2 rotation-dilation blocks
// acting on (a_k, b_k). Truncating a state to finitely many cells is therefore
// exact: no coordinate outside the truncation feeds back into it.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spcd/sequence.hpp"

namespace spcd {

namespace model {

/// d/dt a = -(x d/dx) a + gamma a
struct FoersterLasota {
    double gamma = 0.0;
};

/// d/dt a = -(sigma^2/2)(x^2 d^2/dx^2) a - r (x d/dx) a + r a
struct BlackScholes {
    double r = 0.0;
    double sigma = 0.0;
};

/// Diagonal growth with per-population rates lambda_k.
struct Malthusian {
    SequenceSpec lambda;
};

/// Generator sum_n A_n (F d/dx)^n on Fourier coefficients over a period 2l.
struct Fourier {
    std::vector<double> coefficients;
    double length = 1.0;
};

/// Generator sum_n A_n (x^n d^n/dx^n) on Maclaurin coefficients.
struct Maclaurin {
    std::vector<double> coefficients;
};

}  // namespace model

using FlowModel = std::variant<model::FoersterLasota, model::BlackScholes, model::Malthusian,
                               model::Fourier, model::Maclaurin>;

/// Throws InvalidModel on non-finite parameters, r < 0 or sigma < 0 for
/// Black-Scholes, empty coefficient lists, or l <= 0 for Fourier.
void validate(const FlowModel& model);

[[nodiscard]] std::string family_name(const FlowModel& model);
[[nodiscard]] bool is_fourier(const FlowModel& model);

/// FoersterLasota(g) -> [g, -1], BlackScholes(r, s) -> [r, -r, -s^2/2],
/// Maclaurin(A) -> A. Empty for Malthusian and Fourier.
[[nodiscard]] std::vector<double> maclaurin_coefficients(const FlowModel& model);

/// P(k) = sum_n A_n k!/(k-n)!, with terms n > k contributing nothing.
[[nodiscard]] double maclaurin_rate(std::span<const double> coefficients, std::size_t k);

struct CellFrequencies {
    double sigma = 0.0;  // dilation rate of the cell
    double omega = 0.0;  // rotation rate of the cell
};

/// sigma_k = sum_n (-1)^n A_{2n} (k pi / l)^{2n},
/// omega_k = sum_n (-1)^n A_{2n+1} (k pi / l)^{2n+1}.
[[nodiscard]] CellFrequencies sigma_omega(std::span<const double> coefficients, double length,
                                          std::size_t k);

/// Per-cell log-determinant rates d_k: the Jacobian of cell k at time t has
/// determinant e^{d_k t}.
struct CellRate {
    SequenceSpec rates;
};

[[nodiscard]] CellRate rate_sequence(const FlowModel& model);

/// A finite truncation of a point of R^inf.
///
/// Diagonal layout: (a_0, ..., a_{N-1}), one coordinate per cell.
/// Fourier layout: (a_0/2, a_1, b_1, a_2, b_2, ...); slot 0 holds the raw
/// a_0/2 value, so sizes are 1 + 2 (cells - 1).
class StateVector {
public:
    enum class Layout { Diagonal, Fourier };

    /// Throws LayoutMismatch for an empty state or an even Fourier size.
    StateVector(std::vector<double> coords, Layout layout);

    static StateVector diagonal(std::vector<double> coords);
    static StateVector fourier(std::vector<double> coords);
    /// Zero state with the layout the model expects and `cells` cells.
    static StateVector zeros_for(const FlowModel& model, std::size_t cells);

    [[nodiscard]] Layout layout() const noexcept { return layout_; }
    [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
    [[nodiscard]] std::size_t cells() const noexcept;
    [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }
    [[nodiscard]] double& operator[](std::size_t i) { return coords_[i]; }

    friend bool operator==(const StateVector&, const StateVector&) = default;

private:
    std::vector<double> coords_;
    Layout layout_;
};

/// Phi_t(x0). Throws LayoutMismatch when the layout does not fit the model.
[[nodiscard]] StateVector evolve(const FlowModel& model, const StateVector& x0, double t);

/// f_k(tau) for coordinate index k.
using Forcing = std::function<double(std::size_t k, double tau)>;

struct ForcedEvolution {
    StateVector state;
    double step = 0.0;  // quadrature step t / steps
};

/// Solution of d/dt a = (sum_n A_n x^n d^n/dx^n) a + f(t) with a(0) = x0:
///   a_k(t) = e^{t P(k)} C_k + int_0^t e^{(t - tau) P(k)} f_k(tau) dtau,
/// the integral by composite Simpson over `steps` panels.
/// Throws std::invalid_argument for t < 0 or steps == 0.
[[nodiscard]] ForcedEvolution evolve_forced(std::span<const double> coefficients,
                                            const StateVector& x0, const Forcing& forcing,
                                            double t, std::size_t steps = 256);

}  // namespace spcd
