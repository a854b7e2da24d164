#include "scfu/io.hpp"

#include <fstream>

#include "json.hpp"

namespace scfu {

void write_scfu1(std::ostream& os, const Tensor& t, const std::optional<GenInfo>& gen) {
  t.check_consistent();
  nlohmann::json header;
  header["dims"] = t.dims;
  header["dtype"] = "i8";
  header["layout"] = "rowmajor_c_innermost";
  header["encoded"] = t.encoded;
  if (gen) header["gen"] = {{"algorithm", gen->algorithm}, {"seed", gen->seed}};
  os << "SCFU1\n" << header.dump() << "\n";
  os.write(reinterpret_cast<const char*>(t.data.data()),
           static_cast<std::streamsize>(t.data.size()));
  if (!os) throw IoError("SCFU1 write failed");
}

Tensor read_scfu1(std::istream& is) {
  std::string magic;
  if (!std::getline(is, magic) || magic != "SCFU1")
    throw IoError("not an SCFU1 container (bad magic)");
  std::string header_line;
  if (!std::getline(is, header_line)) throw IoError("missing SCFU1 header");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_line);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed SCFU1 header: ") + e.what());
  }
  if (header.value("dtype", "") != "i8" ||
      header.value("layout", "") != "rowmajor_c_innermost")
    throw IoError("unsupported SCFU1 dtype/layout");

  Tensor t;
  t.dims = header.at("dims").get<std::vector<int>>();
  t.encoded = header.value("encoded", false);
  const int64_t n = Tensor::element_count(t.dims);
  t.data.resize(static_cast<size_t>(n));
  is.read(reinterpret_cast<char*>(t.data.data()), static_cast<std::streamsize>(n));
  if (is.gcount() != n) throw IoError("SCFU1 payload truncated");
  return t;
}

void save_scfu1(const std::string& path, const Tensor& t, const std::optional<GenInfo>& gen) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  write_scfu1(f, t, gen);
}

Tensor load_scfu1(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  return read_scfu1(f);
}

}  // namespace scfu
