#pragma once
#include <functional>
#include <vector>

namespace runup::kernels {

// Execution policy for the node-parallel kernels. Every parallel loop runs over
// independent output elements with a fixed sequential accumulation order inside,
// so Parallel results are bitwise identical to the serial reference.
enum class Exec { Serial, Parallel };

// Parallel when built with OpenMP, unless RUNUP_EXEC=serial is set in the environment.
Exec default_exec();
bool openmp_enabled();
int thread_count();

// First-derivative stencil table on a uniform grid of n nodes.
// Interior rows apply `interior` (width entries, offsets -half..half).
// The first/last `nboundary` rows use one-sided windows anchored at the ends:
// left row r reads nodes 0..width-1, right row r reads nodes n-width..n-1.
struct StencilTable {
    int n = 0;
    int width = 0;
    int half = 0;
    int nboundary = 0;
    const double* interior = nullptr;  // width
    const double* left = nullptr;      // nboundary * width, row-major
    const double* right = nullptr;     // nboundary * width; row 0 is node n-nboundary... row r is node n-nboundary+r
};

void stencil_apply(const StencilTable& st, const double* f, double* df, Exec e);

// Node-wise matrix action on component-major fields (component stride = n):
// out(:,i) = M_i a(:,i) + N_i b(:,i); pass N = nullptr to drop the second term.
void matfield_apply(int n, int m, const double* M, const double* a,
                    const double* N, const double* b, double* out, Exec e);

// Node-wise LU factors (partial pivoting) of n matrices of size m x m.
struct NodeLu {
    int n = 0, m = 0;
    std::vector<double> lu;   // n * m * m
    std::vector<int> piv;     // n * m
    std::vector<double> det;  // n signed determinants
};

// Factor n row-major matrices stored consecutively (m*m each).
NodeLu node_lu_factor(int n, int m, const double* mats);

// y(:,i) = M_i^{-1} r(:,i) with the cached factors; r and y are component-major.
void node_lu_solve(const NodeLu& lu, const double* r, double* y, Exec e);

// out = aa*x + bb*y (elementwise over len entries)
void axpby(int len, double aa, const double* x, double bb, const double* y, double* out, Exec e);

// Hodograph right-hand side combine for the plane-beach system:
// rphi = -dpsi - damp*phi ; rpsi = -c*dphi - phi - damp*psi
void swe_rhs_combine(int n, const double* dphi, const double* dpsi,
                     const double* phi, const double* psi,
                     const double* c, const double* damp,
                     double* rphi, double* rpsi, Exec e);

// Hankel projections: coeff[i] = scale * sum_j wq[j] f[j] K(2 k[i] sqrt(sigma[j]))
// with K = J0 for order 0 and K = sqrt(sigma_j) J1 for order 1.
void hankel_project_j0(int nk, const double* k, int ns, const double* sigma,
                       const double* wq, const double* f, double scale, double* coeff, Exec e);
void hankel_project_j1(int nk, const double* k, int ns, const double* sigma,
                       const double* wq, const double* f, double scale, double* coeff, Exec e);

// Mode synthesis at the sigma nodes for one tau:
//   psi[j] = sum_i w[i] (a[i] cos(k_i tau) - b[i] sin(k_i tau)) J0(2 k_i sqrt(sigma_j))
//   phi[j] = sum_i w[i] (a[i] sin(k_i tau) + b[i] cos(k_i tau)) 2 k_i j1x(2 k_i sqrt(sigma_j))
// where j1x(z) = J1(z)/z, so 2k j1x(2k sqrt(sigma)) = J1(2k sqrt(sigma))/sqrt(sigma).
void hankel_synth(int ns, const double* sigma, int nk, const double* k, const double* w,
                  const double* a, const double* b, double tau,
                  double* phi, double* psi, Exec e);

// Generic parallel loop over [0, n). The body must only write state owned by
// index i. Exceptions thrown by the body are captured and rethrown once.
void for_each_index(int n, Exec e, const std::function<void(int)>& body);

// Serial reference implementations (used by the kernel equivalence tests and
// the benchmark; the Exec::Serial dispatch path lands here).
namespace ref {
void stencil_apply(const StencilTable& st, const double* f, double* df);
void matfield_apply(int n, int m, const double* M, const double* a,
                    const double* N, const double* b, double* out);
void node_lu_solve(const NodeLu& lu, const double* r, double* y);
void axpby(int len, double aa, const double* x, double bb, const double* y, double* out);
void swe_rhs_combine(int n, const double* dphi, const double* dpsi,
                     const double* phi, const double* psi,
                     const double* c, const double* damp,
                     double* rphi, double* rpsi);
void hankel_project_j0(int nk, const double* k, int ns, const double* sigma,
                       const double* wq, const double* f, double scale, double* coeff);
void hankel_project_j1(int nk, const double* k, int ns, const double* sigma,
                       const double* wq, const double* f, double scale, double* coeff);
void hankel_synth(int ns, const double* sigma, int nk, const double* k, const double* w,
                  const double* a, const double* b, double tau,
                  double* phi, double* psi);
}

}
