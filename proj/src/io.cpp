#include "mpsstab/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mpsstab {

namespace {

[[noreturn]] void shape_error(const std::string& pointer, const std::string& what) {
  throw ParseError(pointer + ": " + what, 0, 0, pointer);
}

const Json& member(const Json& j, const char* key, const std::string& pointer) {
  if (!j.is_object()) shape_error(pointer.empty() ? "/" : pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) shape_error(pointer + "/" + key, "missing");
  return *it;
}

int integer(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer()) shape_error(pointer, "expected an integer");
  return j.get<int>();
}

Scalar complex_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    shape_error(pointer, "expected a complex number [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json complex_to_json(Scalar z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty()) shape_error(pointer, "expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) shape_error(pointer + "/0", "expected a nonempty row");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::string rp = pointer + "/" + std::to_string(r);
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array()) shape_error(rp, "expected a row");
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      shape_error(rp, "ragged row: " + std::to_string(row.size()) + " entries, expected " +
                          std::to_string(cols));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], rp + "/" + std::to_string(c));
    }
  }
  return m;
}

Json tensor_to_json(const MpsTensor& a) {
  Json mats = Json::array();
  for (const Matrix& m : a.matrices()) mats.push_back(matrix_to_json(m));
  return Json{{"d", a.d()}, {"D", a.D()}, {"matrices", std::move(mats)}};
}

MpsTensor tensor_from_json(const Json& j) {
  const int d = integer(member(j, "d", ""), "/d");
  const int D = integer(member(j, "D", ""), "/D");
  if (d < 1) shape_error("/d", "physical dimension must be positive");
  if (D < 1) shape_error("/D", "bond dimension must be positive");
  const Json& mats = member(j, "matrices", "");
  if (!mats.is_array()) shape_error("/matrices", "expected an array");
  if (static_cast<int>(mats.size()) != d) {
    shape_error("/matrices", std::to_string(mats.size()) + " matrices, expected d = " +
                                 std::to_string(d));
  }
  std::vector<Matrix> out;
  for (int i = 0; i < d; ++i) {
    const std::string p = "/matrices/" + std::to_string(i);
    Matrix m = matrix_from_json(mats[static_cast<std::size_t>(i)], p);
    if (m.rows() != D || m.cols() != D) {
      shape_error(p, "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", expected D = " + std::to_string(D));
    }
    out.push_back(std::move(m));
  }
  try {
    return MpsTensor(std::move(out));
  } catch (const std::invalid_argument& e) {
    shape_error("/matrices", e.what());
  }
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points one past the offending character.
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column),
                     line, column);
  } catch (const Json::out_of_range& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

MpsTensor parse_tensor(const std::string& text) { return tensor_from_json(parse_json_text(text)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw IoError("write to '" + path + "' failed");
}

MpsTensor load_tensor(const std::string& path) { return parse_tensor(read_file(path)); }

void save_tensor(const std::string& path, const MpsTensor& a) {
  write_file(path, tensor_to_json(a).dump(2) + "\n");
}

std::string content_hash(const MpsTensor& a) {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : tensor_to_json(a).dump()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

Json witness_to_json(const StabilityWitness& w, const PushingOperator& op) {
  Json ys = Json::array();
  for (const Matrix& y : w.Y) ys.push_back(matrix_to_json(y));
  return Json{{"side", to_string(w.side)}, {"j", w.j}, {"Y", std::move(ys)},
              {"O", matrix_to_json(op.O)}};
}

WitnessFile witness_from_json(const Json& j) {
  WitnessFile out;
  const Json& side = member(j, "side", "");
  if (!side.is_string()) shape_error("/side", "expected \"left\" or \"right\"");
  try {
    out.witness.side = side_from_string(side.get<std::string>());
  } catch (const std::invalid_argument& e) {
    shape_error("/side", e.what());
  }
  out.witness.j = integer(member(j, "j", ""), "/j");
  if (out.witness.j < 1) shape_error("/j", "must be at least 1");
  const Json& ys = member(j, "Y", "");
  if (!ys.is_array() || ys.empty()) shape_error("/Y", "expected a nonempty array of matrices");
  for (std::size_t i = 0; i < ys.size(); ++i) {
    out.witness.Y.push_back(matrix_from_json(ys[i], "/Y/" + std::to_string(i)));
  }
  if (j.contains("O")) out.O = matrix_from_json(j["O"], "/O");
  return out;
}

}  // namespace mpsstab
