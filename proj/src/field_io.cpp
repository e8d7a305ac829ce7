#include "nsbox/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nsbox/io_util.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace nsbox {

namespace {

constexpr char kMagic[4] = {'N', 'S', 'C', 'F'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kDivFreeBit = 1u;

template <class T>
void append_raw(std::string& s, const T& v) {
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  s.append(b, sizeof(T));
}

template <class T>
T take_raw(const std::string& s, std::size_t& off) {
  if (off + sizeof(T) > s.size()) throw std::runtime_error("snapshot truncated");
  T v;
  std::memcpy(&v, s.data() + off, sizeof(T));
  off += sizeof(T);
  return v;
}

}  // namespace

void save_field(const std::string& path, const SpectralField& f) {
  std::string bytes;
  bytes.reserve(24 + f.stored_count() * 48);
  bytes.append(kMagic, 4);
  append_raw(bytes, kVersion);
  append_raw(bytes, f.box().length);
  append_raw(bytes, std::uint32_t(f.truncation()));
  append_raw(bytes, std::uint32_t(f.divergence_free() ? kDivFreeBit : 0));
  for (std::size_t i = 0; i < f.stored_count(); ++i)
    for (const Cplx& z : f.slot(i)) {
      append_raw(bytes, z.real());
      append_raw(bytes, z.imag());
    }
  atomic_write_file(path, bytes);
}

void save_field_json(const std::string& path, const SpectralField& f) {
  nlohmann::ordered_json j;
  j["format"] = "nscf-json";
  j["version"] = kVersion;
  j["length"] = f.box().length;
  j["truncation"] = f.truncation();
  j["divergence_free"] = f.divergence_free();
  auto& modes = j["modes"] = nlohmann::ordered_json::array();
  f.for_each([&](const Mode& k, const ModeArray<3>::Entry& e) {
    if (e[0] == 0.0 && e[1] == 0.0 && e[2] == 0.0) return;
    modes.push_back({k[0], k[1], k[2], e[0].real(), e[0].imag(), e[1].real(),
                     e[1].imag(), e[2].real(), e[2].imag()});
  });
  atomic_write_file(path, j.dump(2) + "\n");
}

SpectralField load_field(const std::string& path, double viscosity, double alpha) {
  const std::string bytes = read_file(path);

  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) {
    std::size_t off = 4;
    const auto version = take_raw<std::uint32_t>(bytes, off);
    if (version != kVersion) throw std::runtime_error("unsupported snapshot version");
    const double length = take_raw<double>(bytes, off);
    const auto m = take_raw<std::uint32_t>(bytes, off);
    const auto flags = take_raw<std::uint32_t>(bytes, off);
    SpectralField f(BoxSpec{length, viscosity, alpha}, int(m));
    if (bytes.size() - off != f.stored_count() * 48)
      throw std::runtime_error("snapshot body size does not match header");
    for (std::size_t i = 0; i < f.stored_count(); ++i)
      for (Cplx& z : f.slot(i)) {
        const double re = take_raw<double>(bytes, off);
        const double im = take_raw<double>(bytes, off);
        z = Cplx(re, im);
      }
    f.set_divergence_free(flags & kDivFreeBit);
    return f;
  }

  nlohmann::json j = nlohmann::json::parse(bytes);
  if (j.value("format", "") != "nscf-json")
    throw std::runtime_error("unrecognized snapshot format: " + path);
  SpectralField f(BoxSpec{j.at("length").get<double>(), viscosity, alpha},
                  j.at("truncation").get<int>());
  for (const auto& row : j.at("modes")) {
    if (row.size() != 9) throw std::runtime_error("malformed mode row");
    const Mode k{row[0].get<int>(), row[1].get<int>(), row[2].get<int>()};
    f.set_coeff(k, {Cplx(row[3], row[4]), Cplx(row[5], row[6]), Cplx(row[7], row[8])});
  }
  f.set_divergence_free(j.value("divergence_free", false));
  return f;
}

}  // namespace nsbox
