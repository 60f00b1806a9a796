/*
 * Copyright (c) 2026, The mcs authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mcs/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>
#include <png.h>

#include "json.hpp"
#include "mcs/lattice.hpp"
#include "mcs/metrics_text.hpp"

namespace mcs {

using json = nlohmann::ordered_json;

XyzParseError::XyzParseError(std::size_t line, const std::string& what)
    : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t j = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > j) out.push_back(s.substr(j, i - j));
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_int(std::string_view s, long long& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

void apply_comment(std::string_view comment, Provenance& p) {
  for (std::string_view token : split_ws(comment)) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string_view key = token.substr(0, eq);
    std::string_view value = token.substr(eq + 1);
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    long long i = 0;
    double d = 0.0;
    if (key == "material") {
      p.material = parse_material(value);
    } else if (key == "k" && parse_int(value, i)) {
      p.radius_index = static_cast<int>(i);
    } else if (key == "rotation") {
      if (parse_int(value, i)) p.rotation = static_cast<int>(i);
    } else if (key == "radius" && parse_double(value, d)) {
      p.radius = d;
    }
  }
}

double round3(double v) { return std::strtod(format_fixed3(v).c_str(), nullptr); }

json rotation_json(const Provenance& p) {
  return p.rotation ? json(*p.rotation) : json("base");
}

}  // namespace

std::string write_xyz(const Cluster& cluster) {
  const Provenance& p = cluster.provenance;
  std::string out = std::to_string(cluster.atoms.size()) + "\n";
  std::string comment;
  if (p.material) comment += "material=" + std::string(name(*p.material)) + " ";
  if (p.radius_index > 0) comment += "k=" + std::to_string(p.radius_index) + " ";
  comment += "rotation=" + (p.rotation ? std::to_string(*p.rotation) : std::string("base"));
  if (p.radius > 0.0) comment += " radius=" + fixed6(p.radius);
  comment += " stem=" + stem(p);
  out += comment + "\n";
  for (const Atom& a : cluster.atoms) {
    out += std::string(symbol(a.species)) + " " + fixed6(a.position.x()) + " " +
           fixed6(a.position.y()) + " " + fixed6(a.position.z()) + "\n";
  }
  return out;
}

Cluster read_xyz(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }

  std::size_t li = 0;
  while (li < lines.size() && trim(lines[li]).empty()) ++li;
  if (li == lines.size()) throw XyzParseError(1, "empty input, expected an atom count");
  long long declared = 0;
  if (!parse_int(trim(lines[li]), declared) || declared < 0) {
    throw XyzParseError(li + 1, "expected a non-negative atom count, got '" +
                                    std::string(trim(lines[li])) + "'");
  }
  ++li;
  Cluster cluster;
  if (li < lines.size()) apply_comment(lines[li], cluster.provenance);
  ++li;

  for (; li < lines.size(); ++li) {
    const std::string_view line = trim(lines[li]);
    if (line.empty()) continue;
    const auto fields = split_ws(line);
    if (static_cast<long long>(cluster.atoms.size()) == declared) {
      throw XyzParseError(li + 1, "body has more atoms than the declared " +
                                      std::to_string(declared));
    }
    if (fields.size() < 4) throw XyzParseError(li + 1, "expected '<symbol> <x> <y> <z>'");
    const auto species = parse_species(fields[0]);
    if (!species) {
      throw XyzParseError(li + 1, "unknown element symbol '" + std::string(fields[0]) + "'");
    }
    Vec3 r;
    for (int k = 0; k < 3; ++k) {
      if (!parse_double(fields[static_cast<std::size_t>(k) + 1], r[k])) {
        throw XyzParseError(li + 1, "unparseable coordinate '" +
                                        std::string(fields[static_cast<std::size_t>(k) + 1]) + "'");
      }
    }
    cluster.atoms.push_back({*species, r});
  }
  if (static_cast<long long>(cluster.atoms.size()) != declared) {
    throw XyzParseError(std::max<std::size_t>(lines.size(), 1),
                        "declared " + std::to_string(declared) + " atoms, found " +
                            std::to_string(cluster.atoms.size()));
  }
  return cluster;
}

namespace {

void png_write_to_vector(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void png_flush_noop(png_structp) {}

struct PngReadCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t offset = 0;
};

void png_read_from_span(png_structp png, png_bytep data, png_size_t length) {
  auto* cur = static_cast<PngReadCursor*>(png_get_io_ptr(png));
  if (cur->offset + length > cur->bytes.size()) png_error(png, "truncated PNG stream");
  std::memcpy(data, cur->bytes.data() + cur->offset, length);
  cur->offset += length;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const Image& image) {
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() != static_cast<std::size_t>(3) * image.width * image.height) {
    throw InvalidInput("image buffer does not match its dimensions");
  }
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("png_create_info_struct failed");
  }
  std::vector<std::uint8_t> out;
  std::vector<png_bytep> rows(static_cast<std::size_t>(image.height));
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encoding failed");
  }
  png_set_write_fn(png, &out, png_write_to_vector, png_flush_noop);
  png_set_compression_level(png, 6);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_ALL_FILTERS);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_BASE, PNG_FILTER_TYPE_BASE);
  for (int y = 0; y < image.height; ++y) {
    rows[static_cast<std::size_t>(y)] =
        const_cast<png_bytep>(image.pixels.data() + static_cast<std::size_t>(3) * image.width * y);
  }
  png_set_rows(png, info, rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

Image decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw InvalidInput("not a PNG stream");
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("png_create_info_struct failed");
  }
  PngReadCursor cursor{bytes, 0};
  Image image;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InvalidInput("corrupt PNG stream");
  }
  png_set_read_fn(png, &cursor, png_read_from_span);
  png_read_png(png, info, PNG_TRANSFORM_STRIP_16 | PNG_TRANSFORM_STRIP_ALPHA | PNG_TRANSFORM_PACKING |
                               PNG_TRANSFORM_EXPAND,
               nullptr);
  const auto w = static_cast<int>(png_get_image_width(png, info));
  const auto h = static_cast<int>(png_get_image_height(png, info));
  const int channels = png_get_channels(png, info);
  png_bytepp rows = png_get_rows(png, info);
  image = Image(w, h, Rgb{});
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const png_bytep px = rows[y] + static_cast<std::ptrdiff_t>(x) * channels;
      image.set(x, y, channels >= 3 ? Rgb{px[0], px[1], px[2]} : Rgb{px[0], px[0], px[0]});
    }
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

std::string write_annotation_json(const AnnotationRecord& r) {
  json j;
  j["stem"] = stem(r.provenance);
  j["material"] = r.provenance.material ? std::string(name(*r.provenance.material)) : "";
  if (r.provenance.material) {
    j["structure"] = std::string(name(structure_of(*r.provenance.material)));
  }
  j["radius_index"] = r.provenance.radius_index;
  j["rotation"] = rotation_json(r.provenance);
  j["radius"] = round3(r.provenance.radius);
  j["atom_count"] = r.atom_count;
  json counts = json::object();
  for (Species s : kAllSpecies) {
    const std::size_t n = r.species_counts[static_cast<std::size_t>(s)];
    if (n > 0) counts[std::string(symbol(s))] = n;
  }
  j["species_counts"] = counts;
  j["a"] = round3(r.a);
  j["b"] = round3(r.b);
  j["c"] = round3(r.c);
  j["V"] = round3(r.volume);
  j["nn_mean"] = round3(r.nn_mean);
  j["coordination_mean"] = round3(r.coordination_mean);
  j["coordination_cutoff"] = round3(r.coordination_cutoff);
  j["density_u_A3"] = round3(r.density_u_per_A3);
  j["density_g_cm3"] = round3(r.density_g_per_cm3);
  j["degenerate"] = r.degenerate;
  if (r.rdf) {
    json g = json::array();
    for (double v : r.rdf->g) g.push_back(round3(v));
    j["rdf"] = {{"dr", round3(r.rdf->dr)},
                {"r_max", round3(r.rdf->edges.back())},
                {"g", std::move(g)}};
  }
  return j.dump(2) + "\n";
}

AnnotationRecord read_annotation_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("annotation JSON: ") + e.what());
  }
  try {
    AnnotationRecord r;
    if (j.contains("material")) r.provenance.material = parse_material(j.at("material").get<std::string>());
    r.provenance.radius_index = j.value("radius_index", 0);
    if (j.contains("rotation") && j.at("rotation").is_number_integer()) {
      r.provenance.rotation = j.at("rotation").get<int>();
    }
    r.provenance.radius = j.value("radius", 0.0);
    r.atom_count = j.at("atom_count").get<std::size_t>();
    if (j.contains("species_counts")) {
      for (const auto& [sym, n] : j.at("species_counts").items()) {
        if (const auto s = parse_species(sym)) {
          r.species_counts[static_cast<std::size_t>(*s)] = n.get<std::size_t>();
        }
      }
    }
    r.a = j.at("a").get<double>();
    r.b = j.at("b").get<double>();
    r.c = j.at("c").get<double>();
    r.volume = j.at("V").get<double>();
    r.nn_mean = j.at("nn_mean").get<double>();
    r.coordination_mean = j.at("coordination_mean").get<double>();
    r.coordination_cutoff = j.value("coordination_cutoff", 0.0);
    r.density_u_per_A3 = j.at("density_u_A3").get<double>();
    r.density_g_per_cm3 = j.at("density_g_cm3").get<double>();
    r.degenerate = j.value("degenerate", false);
    if (j.contains("rdf")) {
      RdfTable t;
      t.dr = j.at("rdf").at("dr").get<double>();
      t.g = j.at("rdf").at("g").get<std::vector<double>>();
      for (std::size_t b = 0; b <= t.g.size(); ++b) t.edges.push_back(static_cast<double>(b) * t.dr);
      r.rdf = std::move(t);
    }
    return r;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("annotation JSON: ") + e.what());
  }
}

std::string canonical_json(std::string_view text) {
  try {
    return json::parse(text).dump(2) + "\n";
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("JSON: ") + e.what());
  }
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw IoError("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  return sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  return {text.begin(), text.end()};
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

}  // namespace mcs
