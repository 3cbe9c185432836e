#pragma once

#include <cmath>
#include <complex>
#include <type_traits>
#include <optional>
#include <utility>
#include <variant>

#include "polariton/eit/params.hpp"
#include "polariton/eit/response.hpp"

namespace polariton {

struct UniformB {
    double B0 = 0.0;  ///< T
};

/// B(x) = B0 + B1 x
struct LinearB {
    double B0 = 0.0;  ///< T
    double B1 = 0.0;  ///< T/m
};

/// B(x, y) = B0 + Bx x^2 + By y^2 with Bx, By < 0.
struct HarmonicB {
    double B0 = 0.0;   ///< T
    double Bx = -1.0;  ///< T/m^2
    double By = -1.0;  ///< T/m^2
};

/// Control beam Omega(x, y) = Omega0 exp(-x^2/2sx^2 - y^2/2sy^2). Without sigma_y the beam is
/// uniform along y. The induced potential is proportional to either mu B0 or Delta.
struct GaussianControl {
    double sigma_x = 1.0;
    std::optional<double> sigma_y;
    LevelShift shift = MagneticShift{0.0};
};

using FieldConfig = std::variant<UniformB, LinearB, HarmonicB, GaussianControl>;

/// Which kinetic frame a potential lives in: polariton (v_g, k/v_g) or light (c, k/c).
enum class Frame { polariton, light };

inline void validate_field(const FieldConfig& field) {
    if (const auto* h = std::get_if<HarmonicB>(&field)) {
        if (!(h->Bx < 0.0 && h->By < 0.0))
            throw ConfigError("HarmonicB requires Bx < 0 and By < 0");
    } else if (const auto* g = std::get_if<GaussianControl>(&field)) {
        if (!(g->sigma_x > 0.0)) throw ConfigError("GaussianControl: sigma_x must be > 0");
        if (g->sigma_y && !(*g->sigma_y > 0.0))
            throw ConfigError("GaussianControl: sigma_y must be > 0");
    }
}

/// Polynomial expansion of a potential about (ax, ay):
///   V ~ constant + sum_axis [ c1 (chi - a) + c2 (chi - a)^2 ].
/// Coefficients are complex; they are real whenever gamma2 = 0.
struct PotentialExpansion {
    struct Axis {
        cplx c1{};
        cplx c2{};
    };

    int order = 1;
    double ax = 0.0;
    double ay = 0.0;
    cplx constant{};  ///< V(ax, ay)
    Axis x;
    Axis y;

    cplx operator()(double xv, double yv = 0.0) const {
        const double dx = xv - ax;
        const double dy = yv - ay;
        cplx v = constant + x.c1 * dx + y.c1 * dy;
        if (order >= 2) v += x.c2 * dx * dx + y.c2 * dy * dy;
        return v;
    }

    // Named coefficients of the linear model V = eta0 + eta1 x (x axis only).
    double eta0() const { return (constant - x.c1 * ax).real(); }
    double eta1() const { return x.c1.real(); }
    // Complex linear coefficients eta'_j = -a_j - i b_j in the (x - a) form.
    cplx eta0_prime() const { return constant; }
    cplx eta1_prime() const { return x.c1; }
    double a1() const { return -x.c1.real(); }
    double b1() const { return -x.c1.imag(); }

    double zeta_x1() const { return x.c1.real(); }
    double zeta_x2() const { return x.c2.real(); }
    double zeta_y1() const { return y.c1.real(); }
    double zeta_y2() const { return y.c2.real(); }
};

/// Induced complex potential (rad/s) over the transverse plane.
class PotentialModel {
public:
    /// `detuning` multiplies |g|^2 N / |Omega|^2 for the control beam (mu B0 or Delta).
    PotentialModel(FieldConfig field, double mu_prime, double g2N_over_omega02, double detuning,
                   double gamma2)
        : field_(std::move(field)), mu_prime_(mu_prime), strength_(g2N_over_omega02),
          detuning_(detuning), gamma2_(gamma2) {}

    const FieldConfig& field() const { return field_; }
    Frame frame() const {
        return std::holds_alternative<GaussianControl>(field_) ? Frame::light : Frame::polariton;
    }
    double mu_prime() const { return mu_prime_; }
    /// |g|^2 N / Omega0^2
    double strength() const { return strength_; }
    double gamma2() const { return gamma2_; }
    bool is_real() const { return frame() == Frame::polariton || gamma2_ == 0.0; }
    bool two_dimensional() const {
        if (std::holds_alternative<HarmonicB>(field_)) return true;
        if (const auto* g = std::get_if<GaussianControl>(&field_)) return g->sigma_y.has_value();
        return false;
    }

    double detuning() const { return detuning_; }

    cplx operator()(double x, double y = 0.0) const {
        return std::visit([&](const auto& f) { return evaluate(f, x, y); }, field_);
    }

    const std::optional<PotentialExpansion>& expansion() const { return expansion_; }
    void set_expansion(PotentialExpansion e) { expansion_ = std::move(e); }

private:
    cplx evaluate(const UniformB& f, double, double) const { return -mu_prime_ * f.B0; }
    cplx evaluate(const LinearB& f, double x, double) const {
        return -mu_prime_ * (f.B0 + f.B1 * x);
    }
    cplx evaluate(const HarmonicB& f, double x, double y) const {
        return -mu_prime_ * (f.B0 + f.Bx * x * x + f.By * y * y);
    }
    cplx evaluate(const GaussianControl& f, double x, double y) const {
        // |Omega|^-2 = Omega0^-2 exp(x^2/sx^2 + y^2/sy^2)
        double arg = x * x / (f.sigma_x * f.sigma_x);
        if (f.sigma_y) arg += y * y / (*f.sigma_y * *f.sigma_y);
        const double s = strength_ * std::exp(arg);
        return {-s * detuning_, -s * gamma2_};
    }

    FieldConfig field_;
    double mu_prime_;
    double strength_;
    double detuning_;
    double gamma2_;
    std::optional<PotentialExpansion> expansion_;
};

/// Detuning that enters the control-beam potential: mu B0 (magnetic) or Delta (two-photon).
inline double effective_detuning(const GaussianControl& g, double mu) {
    if (const auto* m = std::get_if<MagneticShift>(&g.shift)) return mu * m->B;
    return std::get<TwoPhotonDetuning>(g.shift).Delta;
}

/// Exact induced potential for a field configuration.
///
/// Magnetic fields: V = -mu' B(r), mu' = mu sin^2(theta).
/// Control beam:    V = -(|g|^2 N / |Omega|^2) (Delta_eff + i gamma2).
inline PotentialModel build_potential(const FieldConfig& field, const PolaritonParams& pol,
                                      const CouplingParams& coupling, double gamma2 = 0.0) {
    validate_field(field);
    coupling.validate();
    if (gamma2 < 0.0) throw ConfigError("build_potential: gamma2 must be >= 0");
    const double strength = coupling.g2N() / (coupling.Omega0 * coupling.Omega0);
    if (std::holds_alternative<GaussianControl>(field) && coupling.gsqrtN == 0.0)
        throw ConfigError("GaussianControl requires a nonzero gsqrtN");
    double detuning = 0.0;
    if (const auto* g = std::get_if<GaussianControl>(&field)) detuning = effective_detuning(*g, pol.mu);
    return PotentialModel(field, pol.mu_pol, strength, detuning, gamma2);
}

/// Angular frequencies of the harmonic magnetic trap: omega_j = sqrt(-2 mu' B_j / m_eff).
inline std::pair<double, double> harmonic_frequencies(const HarmonicB& field,
                                                      const PolaritonParams& pol) {
    const double wx2 = -2.0 * pol.mu_pol * field.Bx / pol.m_eff;
    const double wy2 = -2.0 * pol.mu_pol * field.By / pol.m_eff;
    if (!(wx2 > 0.0 && wy2 > 0.0))
        throw DomainError("harmonic_frequencies: trap is not confining (need mu' > 0, B_j < 0)");
    return {std::sqrt(wx2), std::sqrt(wy2)};
}

/// Taylor expansion of the exact potential about (ax, ay) to first or second order.
/// Coefficients are the analytic derivatives: c1 = dV, c2 = d^2V / 2 per axis.
inline PotentialExpansion expand_induced_potential(const PotentialModel& model, double ax,
                                                   double ay, int order) {
    if (order != 1 && order != 2) throw DomainError("expand_induced_potential: order must be 1 or 2");
    PotentialExpansion e;
    e.order = order;
    e.ax = ax;
    e.ay = ay;
    e.constant = model(ax, ay);
    const double mu_p = model.mu_prime();

    std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, UniformB>) {
            } else if constexpr (std::is_same_v<F, LinearB>) {
                e.x.c1 = -mu_p * f.B1;
            } else if constexpr (std::is_same_v<F, HarmonicB>) {
                e.x.c1 = -2.0 * mu_p * f.Bx * ax;
                e.y.c1 = -2.0 * mu_p * f.By * ay;
                e.x.c2 = -mu_p * f.Bx;
                e.y.c2 = -mu_p * f.By;
            } else {
                const double sx2 = f.sigma_x * f.sigma_x;
                if (!(std::abs(ax) < 10.0 * f.sigma_x))
                    throw DomainError("expand_induced_potential: center outside control beam");
                e.x.c1 = e.constant * (2.0 * ax / sx2);
                e.x.c2 = e.constant * ((sx2 + 2.0 * ax * ax) / (sx2 * sx2));
                if (f.sigma_y) {
                    const double sy2 = *f.sigma_y * *f.sigma_y;
                    if (!(std::abs(ay) < 10.0 * *f.sigma_y))
                        throw DomainError("expand_induced_potential: center outside control beam");
                    e.y.c1 = e.constant * (2.0 * ay / sy2);
                    e.y.c2 = e.constant * ((sy2 + 2.0 * ay * ay) / (sy2 * sy2));
                }
            }
        },
        model.field());
    if (order == 1) {
        e.x.c2 = {};
        e.y.c2 = {};
    }
    return e;
}

}  // namespace polariton
