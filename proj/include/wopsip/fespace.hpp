#ifndef WOPSIP_FESPACE_HPP
#define WOPSIP_FESPACE_HPP

#include <array>
#include <functional>
#include <vector>

#include "wopsip/mesh.hpp"

namespace wopsip {

// ---------------------------------------------------------------------------
// Analytic fields (manufactured solutions, data, exact errors)
// ---------------------------------------------------------------------------

/// Scalar callback bundle. `value` is required; the others may be empty and
/// are only used where a caller needs them (Laplacian for manufactured
/// right-hand sides, gradient for energy errors, Hessian for the anisotropy
/// bound).
struct ScalarField {
  std::function<double(Point2)> value;
  std::function<Point2(Point2)> gradient;
  std::function<double(Point2)> laplacian;
  std::function<std::array<double, 3>(Point2)> hessian;  // (uxx, uxy, uyy)
};

struct VectorField {
  std::array<ScalarField, 2> comp;
};

/// Central finite-difference gradient, used to cross-check callbacks.
Point2 fd_gradient(const ScalarField& f, Point2 x, double step = 1e-6);

// ---------------------------------------------------------------------------
// Degrees of freedom
// ---------------------------------------------------------------------------

enum class Space { CRScalar, CRVector, P0Element, P0Face, RT0 };

/// One dof per edge and scalar component; interior-edge dofs are shared by
/// both adjacent elements, which encodes the zero mean of jumps.
struct DofMapCR {
  int edges = 0;
  int components = 1;
  int size() const { return components * edges; }
  int dof(int component, int edge) const { return component * edges + edge; }
};

/// Elementwise constants (pressures) and boundary-face constants.
struct DofMapP0 {
  int elements = 0;
  int faces = 0;  // boundary faces
  int element_dof(int t) const { return t; }
  int face_dof(int boundary_face) const { return boundary_face; }
};

/// Signed edge-flux dofs; the sign of (element, local edge) relates the
/// element outward normal to the fixed edge normal, so the two elements
/// adjacent to an interior edge carry opposite signs.
struct DofMapRT {
  const Mesh2D* mesh = nullptr;
  int size() const { return mesh->n_edges(); }
  int dof(int edge) const { return edge; }
  int sign(int t, int local_edge) const {
    return mesh->tri_edge_sign[static_cast<size_t>(t)][static_cast<size_t>(local_edge)];
  }
};

DofMapCR cr_dof_map(const Mesh2D& mesh, int components = 1);
DofMapP0 p0_dof_map(const Mesh2D& mesh);
DofMapRT rt_dof_map(const Mesh2D& mesh);

int dof_count(const Mesh2D& mesh, Space space);

struct DiscreteFunction {
  Space space = Space::CRScalar;
  std::vector<double> coeffs;
};

DiscreteFunction zero_function(const Mesh2D& mesh, Space space);

// ---------------------------------------------------------------------------
// Local bases
// ---------------------------------------------------------------------------

/// Constant gradients of the three CR basis functions theta_k = 1 - 2 lambda_k
/// on element t; theta_k has mean delta_kj over the edge opposite vertex j.
std::array<Point2, 3> cr_basis_gradients(const Mesh2D& mesh, int t);

/// Value of theta_k at x (x inside element t).
double cr_basis_value(const Mesh2D& mesh, int t, int k, Point2 x);

/// RT0 basis on element t: theta_k = sign (x - p_k) / (2|T|), with unit flux
/// through the edge opposite vertex k (relative to the fixed edge normal) and
/// zero flux through the other two edges.
Point2 rt_basis_value(const Mesh2D& mesh, int t, int k, Point2 x);
double rt_basis_divergence(const Mesh2D& mesh, int t, int k);

// ---------------------------------------------------------------------------
// Projections and interpolation operators
// ---------------------------------------------------------------------------

/// Elementwise L2 projection onto constants: mean of f over element t.
double project_p0_element(const Mesh2D& mesh, int t, const ScalarField& f);

/// Mean of f over edge e.
double project_p0_face(const Mesh2D& mesh, int e, const ScalarField& f);

/// CR interpolant: edge dof = mean of f over the edge.
DiscreteFunction interpolate_cr(const Mesh2D& mesh, const ScalarField& f);
DiscreteFunction interpolate_cr(const Mesh2D& mesh, const VectorField& f);

/// RT0 interpolant: edge dof = integral of v . n_F over the edge.
DiscreteFunction interpolate_rt(const Mesh2D& mesh, const VectorField& v);

/// RT0 image of a vector CR function: interior edge dof = |F| (mean of v_h) . n_F,
/// boundary edge dof = 0, so the image has vanishing boundary normal fluxes.
DiscreteFunction interpolate_rt0_from_cr(const Mesh2D& mesh,
                                         const DiscreteFunction& v_h);

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Throws std::invalid_argument when x lies outside element t.
double evaluate_scalar(const Mesh2D& mesh, const DiscreteFunction& u, int t, Point2 x);
Point2 evaluate_vector(const Mesh2D& mesh, const DiscreteFunction& u, int t, Point2 x);

/// Constant gradient of a scalar CR function on element t.
Point2 broken_gradient(const Mesh2D& mesh, const DiscreteFunction& u, int t);
/// Per-component gradients of a vector CR function on element t.
std::array<Point2, 2> broken_gradient_vector(const Mesh2D& mesh,
                                             const DiscreteFunction& u, int t);
/// Elementwise divergence of a vector CR or RT0 function.
double broken_divergence(const Mesh2D& mesh, const DiscreteFunction& u, int t);

}  // namespace wopsip

#endif
