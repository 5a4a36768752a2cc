#include "risioi/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <utility>

#include "risioi/specfun.hpp"

namespace risioi::quadrature {

namespace {

// Implicit-shift QL for a symmetric tridiagonal matrix, accumulating only the
// first row of the eigenvector matrix (all that quadrature weights need).
// d: diagonal (n), e: subdiagonal (n-1, e[n-1] used as workspace),
// z: in/out first-row components. Eigenvalues returned ascending.
void imtqlx(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    const double eps = std::numeric_limits<double>::epsilon();
    e.resize(n, 0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m = l;
            while (m < n - 1) {
                if (std::fabs(e[m]) <= eps * (std::fabs(d[m]) + std::fabs(d[m + 1]))) break;
                ++m;
            }
            if (m == l) break;
            if (++iter > 50) throw QuadratureError("imtqlx: QL iteration failed to converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double bb = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bb;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if (!underflow) {
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        }
    }
    // Sort ascending, carrying z along (insertion sort: nearly sorted input).
    for (int i = 1; i < n; ++i) {
        const double dv = d[i], zv = z[i];
        int j = i - 1;
        while (j >= 0 && d[j] > dv) {
            d[j + 1] = d[j];
            z[j + 1] = z[j];
            --j;
        }
        d[j + 1] = dv;
        z[j + 1] = zv;
    }
}

LaguerreRule build_rule(int n, double alpha) {
    LaguerreRule rule;
    rule.alpha = alpha;
    // Jacobi matrix of the generalized Laguerre recurrence:
    //   a_k = 2k + alpha + 1,  b_k = sqrt(k (k + alpha)).
    std::vector<double> d(n), e(n > 1 ? n - 1 : 0), z(n, 0.0);
    for (int k = 0; k < n; ++k) d[k] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(k * (k + alpha));
    z[0] = 1.0;
    imtqlx(d, e, z);
    // w_i = mu0 * z_i^2 with mu0 = Gamma(alpha + 1).
    const double ln_mu0 = specfun::ln_gamma(alpha + 1.0);
    rule.nodes = std::move(d);
    rule.log_weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double az = std::fabs(z[i]);
        rule.log_weights[i] = (az > 0.0) ? ln_mu0 + 2.0 * std::log(az)
                                         : -std::numeric_limits<double>::infinity();
    }
    return rule;
}

} // namespace

const LaguerreRule& gauss_laguerre(int n, double alpha) {
    if (n < 1) throw std::invalid_argument("gauss_laguerre: n >= 1 required");
    if (!(alpha > -1.0)) throw std::invalid_argument("gauss_laguerre: alpha > -1 required");
    using Key = std::pair<int, std::uint64_t>;
    static std::mutex mtx;
    static std::map<Key, LaguerreRule> cache;
    std::uint64_t bits;
    std::memcpy(&bits, &alpha, sizeof bits);
    const Key key{n, bits};
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_rule(n, alpha)).first;
    return it->second;
}

} // namespace risioi::quadrature
