#include "shore/model_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "shore/errors.hpp"

namespace shore {

namespace {

constexpr char kMagic[5] = {'S', 'H', 'O', 'R', '1'};

void write_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

std::uint64_t read_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) throw FormatError("model file truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

void write_double(std::ostream& out, double v) {
  write_u64(out, std::bit_cast<std::uint64_t>(v));
}

double read_double(std::istream& in) {
  return std::bit_cast<double>(read_u64(in));
}

void write_row_major(std::ostream& out, const DenseMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) write_double(out, m(i, j));
}

DenseMatrix read_row_major(std::istream& in, std::size_t rows,
                           std::size_t cols) {
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = read_double(in);
  m.check_finite("load_model");
  return m;
}

}  // namespace

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out.write(kMagic, sizeof(kMagic));
  const std::uint64_t m = model.phi ? model.phi->m : 0;
  const std::uint64_t K =
      model.phi ? model.phi->K : model.regressor.weights.rows();
  const std::uint64_t d = model.regressor.weights.cols();
  write_u64(out, m);
  write_u64(out, K);
  write_u64(out, d);
  if (model.phi) write_row_major(out, model.phi->mat);
  write_row_major(out, model.regressor.weights);
  if (!out) throw FormatError("write to '" + path.string() + "' failed");
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  char magic[5];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("'" + path.string() + "' is not a SHOR1 model file");
  }
  const std::uint64_t m = read_u64(in);
  const std::uint64_t K = read_u64(in);
  const std::uint64_t d = read_u64(in);
  Model model;
  if (m > 0) {
    model.phi = compression_from_matrix(read_row_major(in, m, K), 0);
    model.regressor.weights = read_row_major(in, m, d);
    model.regressor.compressed = true;
  } else {
    model.regressor.weights = read_row_major(in, K, d);
    model.regressor.compressed = false;
  }
  char extra;
  if (in.read(&extra, 1)) {
    throw FormatError("'" + path.string() + "' has trailing bytes");
  }
  return model;
}

}  // namespace shore
