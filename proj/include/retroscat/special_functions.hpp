#pragma once

#include <complex>
#include <vector>

// Integer-order cylinder functions of real argument.
//
// J_n is obtained by Miller's downward recurrence normalised with
// J_0 + 2*sum J_2k = 1. Y_0 and Y_1 follow from the Neumann series in the
// same J_k values, and higher Y_n from the (stable) upward recurrence. One
// evaluation produces the whole table 0..nmax, which is what the modal and
// boundary-integral solvers consume.
namespace retroscat::special {

struct CylEval {
  int order = 0;
  double argument = 0.0;
  double j = 0.0;
  double y = 0.0;
  std::complex<double> h1;
};

struct CylinderTable {
  std::vector<double> j;  // J_0 .. J_nmax
  std::vector<double> y;  // Y_0 .. Y_nmax

  std::complex<double> h1(int n) const { return {j[n], y[n]}; }
};

// J_0..J_nmax. Throws DomainError for x < 0.
std::vector<double> bessel_j_table(int nmax, double x);

// J and Y for orders 0..nmax. Throws DomainError for x <= 0.
CylinderTable cylinder_table(int nmax, double x);

double bessel_j(int n, double x);
double bessel_y(int n, double x);
std::complex<double> hankel1(int n, double x);

// C_n'(x) = C_{n-1}(x) - (n/x) C_n(x), with C_{-1} = -C_1.
double deriv_j(int n, double x);
double deriv_y(int n, double x);
std::complex<double> deriv_h1(int n, double x);

CylEval cyl_eval(int n, double x);

// Derivative of order n from a table that holds orders up to at least n+1.
double table_deriv(const std::vector<double>& c, int n, double x);

}  // namespace retroscat::special
