#include "wigmd.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "cohen.hpp"
#include "harness.hpp"
#include "hermite.hpp"
#include "moments.hpp"
#include "ops.hpp"
#include "render.hpp"
#include "riesz.hpp"
#include "signal_io.hpp"
#include "wigner.hpp"

using namespace wigmd;

struct wigmd_grid {
  Grid1D value;
};
struct wigmd_signal {
  Signal value;
};
struct wigmd_field {
  Field2D value;
};
struct wigmd_op {
  PolyOp value;
};
struct wigmd_kernel {
  KernelPoly value;
};
struct wigmd_family {
  OrthonormalFamily value;
};
struct wigmd_opmatrix {
  OperatorMatrix value;
};
struct wigmd_report {
  Report value;
  std::string json;
  std::string csv;
  std::string first_failure;
};

namespace {

thread_local std::string tl_error;

wigmd_status status_of(const Error& e) {
  switch (e.code()) {
    case Errc::invalid_argument: return WIGMD_ERR_INVALID_ARGUMENT;
    case Errc::grid_mismatch: return WIGMD_ERR_GRID_MISMATCH;
    case Errc::unresolved_degree: return WIGMD_ERR_UNRESOLVED_DEGREE;
    case Errc::not_normalized: return WIGMD_ERR_NOT_NORMALIZED;
    case Errc::not_orthonormal: return WIGMD_ERR_NOT_ORTHONORMAL;
    case Errc::singular_matrix: return WIGMD_ERR_SINGULAR_MATRIX;
    case Errc::kernel_not_real: return WIGMD_ERR_KERNEL_NOT_REAL;
    case Errc::parse_error: return WIGMD_ERR_PARSE;
    case Errc::io_error: return WIGMD_ERR_IO;
    case Errc::out_of_range: return WIGMD_ERR_OUT_OF_RANGE;
    case Errc::zero_signal: return WIGMD_ERR_ZERO_SIGNAL;
  }
  return WIGMD_ERR_INTERNAL;
}

// Runs the body, converting exceptions into status codes + last-error text.
template <class F>
wigmd_status guarded(F&& body) {
  try {
    body();
    tl_error.clear();
    return WIGMD_OK;
  } catch (const Error& e) {
    tl_error = e.what();
    return status_of(e);
  } catch (const std::bad_alloc&) {
    tl_error = "out of memory";
    return WIGMD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    tl_error = e.what();
    return WIGMD_ERR_INTERNAL;
  }
}

template <class Handle, class Value>
wigmd_status make_handle(Handle** out, Value&& value) {
  if (out == nullptr) {
    tl_error = "null output pointer";
    return WIGMD_ERR_INVALID_ARGUMENT;
  }
  *out = new Handle{std::forward<Value>(value)};
  return WIGMD_OK;
}

}  // namespace

extern "C" {

const char* wigmd_version(void) { return "1.0.0"; }

const char* wigmd_last_error(void) { return tl_error.c_str(); }

wigmd_status wigmd_grid_create(double half_width, int size, wigmd_grid** out) {
  return guarded([&] {
    Grid1D g(half_width, size);
    if (make_handle(out, std::move(g)) != WIGMD_OK) fail(Errc::invalid_argument, "null output pointer");
  });
}

void wigmd_grid_destroy(wigmd_grid* grid) { delete grid; }
int wigmd_grid_size(const wigmd_grid* grid) { return grid->value.size(); }
double wigmd_grid_half_width(const wigmd_grid* grid) { return grid->value.half_width(); }
double wigmd_grid_spacing(const wigmd_grid* grid) { return grid->value.spacing(); }

wigmd_status wigmd_signal_create(const wigmd_grid* grid, const double* samples, wigmd_signal** out) {
  return guarded([&] {
    if (grid == nullptr || samples == nullptr) fail(Errc::invalid_argument, "null argument");
    std::vector<cplx> data(static_cast<size_t>(grid->value.size()));
    for (size_t i = 0; i < data.size(); ++i) data[i] = cplx{samples[2 * i], samples[2 * i + 1]};
    make_handle(out, Signal(grid->value, std::move(data)));
  });
}

wigmd_status wigmd_signal_hermite(const wigmd_grid* grid, int degree, wigmd_signal** out) {
  return guarded([&] {
    if (grid == nullptr) fail(Errc::invalid_argument, "null grid");
    make_handle(out, hermite_function(degree, grid->value));
  });
}

wigmd_status wigmd_signal_named(const wigmd_grid* grid, const char* name, wigmd_signal** out) {
  return guarded([&] {
    if (grid == nullptr || name == nullptr) fail(Errc::invalid_argument, "null argument");
    make_handle(out, named_signal(name, grid->value));
  });
}

void wigmd_signal_destroy(wigmd_signal* signal) { delete signal; }
int wigmd_signal_size(const wigmd_signal* signal) { return signal->value.size(); }

wigmd_status wigmd_signal_samples(const wigmd_signal* signal, double* out) {
  return guarded([&] {
    if (signal == nullptr || out == nullptr) fail(Errc::invalid_argument, "null argument");
    const auto s = signal->value.samples();
    for (size_t i = 0; i < s.size(); ++i) {
      out[2 * i] = s[i].real();
      out[2 * i + 1] = s[i].imag();
    }
  });
}

double wigmd_signal_squared_norm(const wigmd_signal* signal) { return signal->value.squared_norm(); }

wigmd_status wigmd_signal_fourier(const wigmd_signal* in, wigmd_signal** out) {
  return guarded([&] { make_handle(out, fourier_transform(in->value)); });
}

wigmd_status wigmd_signal_position(const wigmd_signal* in, wigmd_signal** out) {
  return guarded([&] { make_handle(out, apply_position(in->value)); });
}

wigmd_status wigmd_signal_momentum(const wigmd_signal* in, wigmd_signal** out) {
  return guarded([&] { make_handle(out, apply_momentum(in->value)); });
}

wigmd_status wigmd_signal_inner(const wigmd_signal* f, const wigmd_signal* g, double out_reim[2]) {
  return guarded([&] {
    const cplx v = inner_product(f->value, g->value);
    out_reim[0] = v.real();
    out_reim[1] = v.imag();
  });
}

wigmd_status wigmd_signal_moments(const wigmd_signal* f, double out[5]) {
  return guarded([&] {
    const MomentReport m = moments(f->value);
    out[0] = m.mu;
    out[1] = m.mu_hat;
    out[2] = m.var;
    out[3] = m.var_hat;
    out[4] = m.md_sum();
  });
}

wigmd_status wigmd_signal_save(const wigmd_signal* f, const char* path) {
  return guarded([&] { save_signal(path, f->value); });
}

wigmd_status wigmd_signal_load(const char* path, wigmd_signal** out) {
  return guarded([&] { make_handle(out, load_signal(path)); });
}

wigmd_status wigmd_cross_wigner(const wigmd_signal* f, const wigmd_signal* g, wigmd_field** out) {
  return guarded([&] { make_handle(out, cross_wigner(f->value, g->value)); });
}

wigmd_status wigmd_cohen(const wigmd_signal* f, const wigmd_signal* g, const wigmd_kernel* kernel,
                         wigmd_field** out) {
  return guarded([&] { make_handle(out, cohen_transform(f->value, g->value, kernel->value)); });
}

void wigmd_field_destroy(wigmd_field* field) { delete field; }
int wigmd_field_size(const wigmd_field* field) { return field->value.size_x(); }
double wigmd_field_squared_norm(const wigmd_field* field) { return field->value.squared_norm(); }

wigmd_status wigmd_field_moyal(const wigmd_field* f, const wigmd_field* g, double out_reim[2]) {
  return guarded([&] {
    const cplx v = moyal_product(f->value, g->value);
    out_reim[0] = v.real();
    out_reim[1] = v.imag();
  });
}

wigmd_status wigmd_field_covariance(const wigmd_field* f, double out[7]) {
  return guarded([&] {
    const CovarianceReport c = covariance(f->value);
    out[0] = c.mean_x;
    out[1] = c.mean_y;
    out[2] = c.cxx;
    out[3] = c.cxy;
    out[4] = c.cyy;
    out[5] = c.trace();
    out[6] = c.energy_moment;
  });
}

wigmd_status wigmd_field_save_text(const wigmd_field* f, const char* path) {
  return guarded([&] { save_field(path, f->value); });
}

wigmd_status wigmd_field_save_ppm(const wigmd_field* f, const char* path) {
  return guarded([&] { save_ppm(path, f->value); });
}

wigmd_status wigmd_field_save_svg(const wigmd_field* f, const char* path) {
  return guarded([&] { save_svg(path, f->value); });
}

wigmd_status wigmd_op_parse(const char* expr, wigmd_op** out) {
  return guarded([&] {
    if (expr == nullptr) fail(Errc::invalid_argument, "null expression");
    make_handle(out, PolyOp::parse(expr));
  });
}

wigmd_status wigmd_op_lhat(wigmd_op** out) {
  return guarded([&] { make_handle(out, lhat_op()); });
}

void wigmd_op_destroy(wigmd_op* op) { delete op; }

wigmd_status wigmd_op_apply(const wigmd_op* op, const wigmd_field* in, wigmd_field** out) {
  return guarded([&] { make_handle(out, apply_op(op->value, in->value)); });
}

wigmd_status wigmd_op_quadratic_form(const wigmd_op* op, const wigmd_field* field, double out_reim[2]) {
  return guarded([&] {
    const cplx v = quadratic_form(op->value, field->value);
    out_reim[0] = v.real();
    out_reim[1] = v.imag();
  });
}

wigmd_status wigmd_kernel_parse(const char* expr, wigmd_kernel** out) {
  return guarded([&] {
    if (expr == nullptr) fail(Errc::invalid_argument, "null expression");
    make_handle(out, KernelPoly::parse(expr));
  });
}

void wigmd_kernel_destroy(wigmd_kernel* kernel) { delete kernel; }

wigmd_status wigmd_family_hermite(int truncation, int count, wigmd_family** out) {
  return guarded([&] { make_handle(out, hermite_family(truncation, count)); });
}

wigmd_status wigmd_family_random(int truncation, int count, uint64_t seed, wigmd_family** out) {
  return guarded([&] { make_handle(out, random_orthonormal_family(truncation, count, seed)); });
}

void wigmd_family_destroy(wigmd_family* family) { delete family; }

double wigmd_family_gram_deviation(const wigmd_family* family) { return gram_deviation(family->value); }

wigmd_status wigmd_opmatrix_generate(int truncation, const char* spec, wigmd_opmatrix** out) {
  return guarded([&] {
    if (spec == nullptr) fail(Errc::invalid_argument, "null spec");
    make_handle(out, OperatorMatrix::from_generator(truncation, spec));
  });
}

wigmd_status wigmd_opmatrix_load_csv(const char* path, wigmd_opmatrix** out) {
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, std::string("cannot open: ") + path);
    std::stringstream buf;
    buf << in.rdbuf();
    make_handle(out, OperatorMatrix::from_csv_text(buf.str()));
  });
}

void wigmd_opmatrix_destroy(wigmd_opmatrix* matrix) { delete matrix; }

wigmd_status wigmd_opmatrix_norms(const wigmd_opmatrix* matrix, double out[4]) {
  return guarded([&] {
    out[0] = matrix->value.norm_u();
    out[1] = matrix->value.norm_u_inverse();
    out[2] = matrix->value.sigma_min();
    out[3] = matrix->value.norm_estimates_converged() ? 1.0 : 0.0;
  });
}

wigmd_status wigmd_run_suite(const char* suite, const char* config_json, wigmd_report** out) {
  return guarded([&] {
    if (suite == nullptr) fail(Errc::invalid_argument, "null suite name");
    const RunConfig config = config_json ? RunConfig::from_json(config_json) : RunConfig{};
    Report rep = run_suite(suite, config);
    auto* handle = new wigmd_report{std::move(rep), {}, {}, {}};
    handle->json = handle->value.to_json();
    handle->csv = handle->value.to_csv();
    if (const Case* c = handle->value.first_failure()) handle->first_failure = c->name;
    if (out == nullptr) {
      delete handle;
      fail(Errc::invalid_argument, "null output pointer");
    }
    *out = handle;
  });
}

void wigmd_report_destroy(wigmd_report* report) { delete report; }

int wigmd_report_pass(const wigmd_report* report) { return report->value.pass() ? 1 : 0; }

int wigmd_report_case_count(const wigmd_report* report) {
  return static_cast<int>(report->value.cases.size());
}

const char* wigmd_report_first_failure(const wigmd_report* report) {
  return report->first_failure.empty() ? nullptr : report->first_failure.c_str();
}

const char* wigmd_report_json(const wigmd_report* report) { return report->json.c_str(); }

const char* wigmd_report_csv(const wigmd_report* report) { return report->csv.c_str(); }

}  // extern "C"
