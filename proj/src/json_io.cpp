#include "cartan/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace cartan {

Json matrix_to_json(const Mat& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Json complex_to_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

Eigen::Index require_dim(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    malformed(std::string("missing integer field '") + key + "'");
  }
  auto v = j[key].get<std::int64_t>();
  if (v < 1 || v > 100000) {
    malformed(std::string("field '") + key + "' out of range");
  }
  return static_cast<Eigen::Index>(v);
}

}  // namespace

Mat matrix_from_json(const Json& j) {
  if (!j.is_object()) malformed("matrix must be a JSON object");
  Eigen::Index rows = require_dim(j, "rows");
  Eigen::Index cols = require_dim(j, "cols");
  if (!j.contains("data") || !j["data"].is_array()) {
    malformed("missing 'data' array");
  }
  const Json& data = j["data"];
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    malformed("'data' must hold rows*cols entries");
  }
  Mat m(rows, cols);
  Eigen::Index at = 0;
  for (const Json& entry : data) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number()) {
      malformed("matrix entries must be [re, im] number pairs");
    }
    double re = entry[0].get<double>();
    double im = entry[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      malformed("matrix entries must be finite");
    }
    m(at / cols, at % cols) = Complex(re, im);
    ++at;
  }
  return m;
}

IsometryParts isometry_parts_from_json(const Json& j) {
  if (!j.is_object()) malformed("isometry must be a JSON object");
  IsometryParts parts;
  parts.m = require_dim(j, "m");
  parts.n = require_dim(j, "n");
  if (!j.contains("matrix")) malformed("missing 'matrix' field");
  parts.matrix = matrix_from_json(j["matrix"]);
  if (parts.matrix.rows() != parts.m + parts.n ||
      parts.matrix.cols() != parts.m + parts.n) {
    malformed("matrix must be (m+n) x (m+n)");
  }
  return parts;
}

Json isometry_to_json(const GIsometry& t) {
  return Json{{"m", t.m()}, {"n", t.n()}, {"matrix", matrix_to_json(t.matrix())}};
}

Json factored_to_json(const FactoredIsometry& f) {
  return Json{{"A", matrix_to_json(f.a.matrix())},
              {"U", matrix_to_json(f.u)},
              {"V", matrix_to_json(f.v)}};
}

Json relations_to_json(const RelationsReport& r) {
  Json out = Json::array();
  for (double v : r.residuals) out.push_back(v);
  return out;
}

Json classification_to_json(const Classification& c) {
  Json residuals = Json::object();
  for (const auto& [key, value] : c.residuals) residuals[key] = value;
  return Json{{"member", c.is_member},
              {"unitary", c.is_unitary},
              {"normal", c.is_normal},
              {"self_adjoint", c.is_self_adjoint},
              {"non_unitary_normal", c.is_non_unitary_normal},
              {"residuals", residuals}};
}

Json decomposition_to_json(const SpectralDecomposition& s) {
  Json blocks = Json::array();
  for (const auto& b : s.blocks) {
    blocks.push_back(Json{{"a", b.a},
                          {"delta", b.delta},
                          {"k_i", b.k_i},
                          {"basis_K", matrix_to_json(b.basis_K)},
                          {"basis_M", matrix_to_json(b.basis_M)}});
  }
  return Json{{"blocks", blocks},
              {"k", s.k},
              {"basis_Kperp", matrix_to_json(s.basis_Kperp)}};
}

Json spectrum_to_json(const std::vector<LabeledEigenvalue>& spectrum) {
  Json out = Json::array();
  for (const auto& entry : spectrum) {
    out.push_back(Json{{"value", complex_to_json(entry.value)},
                       {"label", entry.label}});
  }
  return out;
}

Json detection_to_json(const DetectionReport& r) {
  Json pairs = Json::array();
  for (const auto& p : r.details) {
    pairs.push_back(Json{{"mu_plus", complex_to_json(p.mu_plus)},
                         {"mu_minus", complex_to_json(p.mu_minus)},
                         {"directions", p.directions}});
  }
  return Json{{"conclusion", to_string(r.conclusion)},
              {"count", r.count},
              {"k", r.k},
              {"q", r.q},
              {"pairs", pairs}};
}

Json generic_point_to_json(const GenericFixedPoint& p) {
  Json eigenvalues = Json::array();
  for (const Complex& z : p.eigenvalues) eigenvalues.push_back(complex_to_json(z));
  Json theta = Json::array();
  for (int eps : p.theta) theta.push_back(eps);
  return Json{{"theta", theta},
              {"F", matrix_to_json(p.f)},
              {"norm", p.norm},
              {"residual", p.residual},
              {"eigenvalues", eigenvalues}};
}

Json extra_point_to_json(const ExtraFixedPoint& p) {
  return Json{{"mu", complex_to_json(p.mu)},
              {"F", matrix_to_json(p.f)},
              {"residual", p.residual}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void append_double(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void dump_value(std::string& out, const Json& j, bool pretty, int depth) {
  auto newline = [&](int d) {
    if (pretty) {
      out += '\n';
      out.append(static_cast<std::size_t>(2 * d), ' ');
    }
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        append_escaped(out, key);
        out += pretty ? ": " : ":";
        dump_value(out, value, pretty, depth + 1);
      }
      newline(depth);
      out += '}';
      break;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_value(out, value, pretty, depth + 1);
      }
      newline(depth);
      out += ']';
      break;
    }
    case Json::value_t::string:
      append_escaped(out, j.get_ref<const std::string&>());
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case Json::value_t::number_float:
      append_double(out, j.get<double>());
      break;
    case Json::value_t::null:
    default:
      out += "null";
      break;
  }
}

}  // namespace

std::string dump_json(const Json& j, bool pretty) {
  std::string out;
  dump_value(out, j, pretty, 0);
  out += '\n';
  return out;
}

}  // namespace cartan
