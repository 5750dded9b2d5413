#ifndef ROCKETQD_CMA_CMA_ES_HPP
#define ROCKETQD_CMA_CMA_ES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include <rocketqd/qd/archive.hpp>

namespace rocketqd::cma {

    using Vector = Eigen::VectorXd;
    using Matrix = Eigen::MatrixXd;

    inline constexpr double kMinStepSize = 1e-12;
    inline constexpr double kMaxCondition = 1e14;
    inline constexpr int kStagnationWindow = 50;

    /// Thrown by ask() when the covariance has lost positive definiteness.
    struct RestartRequired : std::runtime_error {
        using std::runtime_error::runtime_error;
    };

    /// Recombination weights and learning rates. Standard CMA-ES defaults for dimension n,
    /// with the population size supplied by the caller.
    struct CmaWeights {
        int lambda = 0;
        int mu = 0;
        std::vector<double> w;
        double mu_eff = 0.0;
        double c_sigma = 0.0;
        double d_sigma = 0.0;
        double c_c = 0.0;
        double c_1 = 0.0;
        double c_mu = 0.0;
        double chi_n = 0.0;
        int eigen_interval = 1;

        static CmaWeights standard(int n, int lambda)
        {
            if (n < 1 || lambda < 2)
                throw std::invalid_argument("CMA-ES needs n >= 1 and lambda >= 2");
            CmaWeights p;
            p.lambda = lambda;
            p.mu = lambda / 2;
            p.w.resize(static_cast<std::size_t>(p.mu));
            double sum = 0.0;
            for (int i = 0; i < p.mu; ++i) {
                p.w[static_cast<std::size_t>(i)] = std::log((lambda + 1.0) / 2.0) - std::log(i + 1.0);
                sum += p.w[static_cast<std::size_t>(i)];
            }
            double sq = 0.0;
            for (double& wi : p.w) {
                wi /= sum;
                sq += wi * wi;
            }
            p.mu_eff = 1.0 / sq;

            const double dn = n;
            p.c_sigma = (p.mu_eff + 2.0) / (dn + p.mu_eff + 5.0);
            p.d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((p.mu_eff - 1.0) / (dn + 1.0)) - 1.0) + p.c_sigma;
            p.c_c = (4.0 + p.mu_eff / dn) / (dn + 4.0 + 2.0 * p.mu_eff / dn);
            p.c_1 = 2.0 / ((dn + 1.3) * (dn + 1.3) + p.mu_eff);
            p.c_mu = std::min(1.0 - p.c_1, 2.0 * (p.mu_eff - 2.0 + 1.0 / p.mu_eff) / ((dn + 2.0) * (dn + 2.0) + p.mu_eff));
            p.chi_n = std::sqrt(dn) * (1.0 - 1.0 / (4.0 * dn) + 1.0 / (21.0 * dn * dn));
            p.eigen_interval = std::max(1, static_cast<int>(std::floor(1.0 / (10.0 * (p.c_1 + p.c_mu) * dn))));
            return p;
        }
    };

    struct CmaState {
        Vector mean;
        double sigma = 0.5;
        Matrix cov;
        Vector path_c;
        Vector path_sigma;
        Matrix eigvecs;          // B
        Vector eigvals;          // diagonal of D^2
        int eigen_age = 0;       // tells since the last decomposition
        int generation = 0;
        int stagnant_generations = 0;

        static CmaState initial(const Vector& mean, double sigma)
        {
            const auto n = mean.size();
            CmaState s;
            s.mean = mean;
            s.sigma = sigma;
            s.cov = Matrix::Identity(n, n);
            s.path_c = Vector::Zero(n);
            s.path_sigma = Vector::Zero(n);
            s.eigvecs = Matrix::Identity(n, n);
            s.eigvals = Vector::Ones(n);
            return s;
        }

        int dim() const { return static_cast<int>(mean.size()); }
    };

    /// Fresh eigendecomposition of C; throws RestartRequired if C is not positive definite.
    inline void refresh_eigen(CmaState& s)
    {
        Eigen::SelfAdjointEigenSolver<Matrix> es(s.cov);
        if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 0.0))
            throw RestartRequired("covariance is not positive definite");
        s.eigvecs = es.eigenvectors();
        s.eigvals = es.eigenvalues();
        s.eigen_age = 0;
    }

    inline double condition_number(const CmaState& s)
    {
        Eigen::SelfAdjointEigenSolver<Matrix> es(s.cov, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff();
        if (!(lo > 0.0))
            return std::numeric_limits<double>::infinity();
        return es.eigenvalues().maxCoeff() / lo;
    }

    /// Draws `lambda` samples mean + sigma * B D z with z ~ N(0, I).
    template <typename Rng>
    std::vector<Vector> ask(CmaState& s, const CmaWeights& p, int lambda, Rng& rng)
    {
        if (s.eigen_age >= p.eigen_interval)
            refresh_eigen(s);
        const int n = s.dim();
        const Vector scale = s.eigvals.cwiseSqrt();
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<Vector> out;
        out.reserve(static_cast<std::size_t>(lambda));
        for (int k = 0; k < lambda; ++k) {
            Vector z(n);
            for (int i = 0; i < n; ++i)
                z[i] = normal(rng);
            out.push_back(s.mean + s.sigma * (s.eigvecs * scale.cwiseProduct(z)));
        }
        return out;
    }

    /// Rank-one + rank-mu update from solutions already ordered best-first.
    inline void tell(CmaState& s, const CmaWeights& p, std::span<const Vector> ranked)
    {
        if (static_cast<int>(ranked.size()) != p.lambda)
            throw std::invalid_argument("tell expects exactly lambda ranked solutions");
        const int n = s.dim();
        const Vector old_mean = s.mean;

        std::vector<Vector> ys;
        ys.reserve(static_cast<std::size_t>(p.mu));
        Vector y_w = Vector::Zero(n);
        for (int i = 0; i < p.mu; ++i) {
            ys.push_back((ranked[static_cast<std::size_t>(i)] - old_mean) / s.sigma);
            y_w += p.w[static_cast<std::size_t>(i)] * ys.back();
        }
        s.mean = old_mean + s.sigma * y_w;

        // C^{-1/2} y_w = B D^{-1} B^T y_w
        const Vector inv_sqrt = s.eigvals.cwiseSqrt().cwiseInverse();
        const Vector c_inv_half_yw = s.eigvecs * inv_sqrt.cwiseProduct(s.eigvecs.transpose() * y_w);
        s.path_sigma = (1.0 - p.c_sigma) * s.path_sigma + std::sqrt(p.c_sigma * (2.0 - p.c_sigma) * p.mu_eff) * c_inv_half_yw;

        const double ps_norm = s.path_sigma.norm();
        const double decay = 1.0 - std::pow(1.0 - p.c_sigma, 2.0 * (s.generation + 1));
        const bool h_sigma = ps_norm / std::sqrt(decay) < (1.4 + 2.0 / (n + 1.0)) * p.chi_n;

        s.path_c = (1.0 - p.c_c) * s.path_c;
        if (h_sigma)
            s.path_c += std::sqrt(p.c_c * (2.0 - p.c_c) * p.mu_eff) * y_w;

        Matrix rank_mu = Matrix::Zero(n, n);
        for (int i = 0; i < p.mu; ++i)
            rank_mu += p.w[static_cast<std::size_t>(i)] * ys[static_cast<std::size_t>(i)] * ys[static_cast<std::size_t>(i)].transpose();
        const double delta = h_sigma ? 0.0 : p.c_c * (2.0 - p.c_c);
        s.cov = (1.0 - p.c_1 - p.c_mu + p.c_1 * delta) * s.cov + p.c_1 * (s.path_c * s.path_c.transpose()) + p.c_mu * rank_mu;
        s.cov = 0.5 * (s.cov + s.cov.transpose()).eval();

        s.sigma *= std::exp((p.c_sigma / p.d_sigma) * (ps_norm / p.chi_n - 1.0));

        const double moved = (s.mean - old_mean).norm();
        if (moved <= 1e-12 * (1.0 + old_mean.norm()))
            ++s.stagnant_generations;
        else
            s.stagnant_generations = 0;
        ++s.generation;
        ++s.eigen_age;
    }

    /// Restart when nothing in the last generation was accepted, or the distribution has
    /// degenerated (tiny step, ill-conditioned C, or a mean that stopped moving).
    inline bool should_restart(const CmaState& s, std::span<const InsertResult> last)
    {
        if (!last.empty() && std::all_of(last.begin(), last.end(), [](const InsertResult& r) { return r.status == InsertStatus::Rejected; }))
            return true;
        if (!(s.sigma >= kMinStepSize))
            return true;
        if (s.stagnant_generations >= kStagnationWindow)
            return true;
        return !(condition_number(s) <= kMaxCondition);
    }

    /// Mean at a uniformly chosen elite (zero vector for an empty archive), step 0.5.
    template <typename Rng>
    void restart(CmaState& s, const GridArchive& archive, double sigma0, Rng& rng)
    {
        Vector mean = Vector::Zero(s.dim());
        if (!archive.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, archive.occupied_count() - 1);
            const Solution& elite = archive.occupant_by_rank(pick(rng));
            for (int i = 0; i < s.dim(); ++i)
                mean[i] = elite.genome[static_cast<std::size_t>(i)];
        }
        s = CmaState::initial(mean, sigma0);
    }

} // namespace rocketqd::cma

#endif
