#include "shafstats/store.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "shafstats/error.hpp"

namespace shafstats {

namespace {

constexpr std::string_view kMagic = "# shafstats-ap-cache v";
constexpr std::string_view kColumns = "p,ap";

[[noreturn]] void format_error(const std::filesystem::path& path, const std::string& what) {
  throw Error(ErrorKind::Format, path.string() + ": " + what);
}

template <class T>
bool parse_int(std::string_view text, T& out, int base = 10) {
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, out, base);
  return ec == std::errc{} && ptr == last && !text.empty();
}

// Splits "# k1=v1 k2=v2" into values in the given key order.
bool parse_fields(std::string_view line, std::string_view prefix,
                  std::initializer_list<std::string_view> keys, std::vector<std::string_view>& out) {
  if (!line.starts_with(prefix)) return false;
  line.remove_prefix(prefix.size());
  out.clear();
  for (std::string_view key : keys) {
    if (!line.starts_with(key) || line.size() <= key.size() || line[key.size()] != '=') return false;
    line.remove_prefix(key.size() + 1);
    const std::size_t space = line.find(' ');
    out.push_back(line.substr(0, space));
    line = space == std::string_view::npos ? std::string_view{} : line.substr(space + 1);
  }
  return line.empty();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "read failed: " + path.string());
  return std::move(buf).str();
}

struct ParsedFile {
  CacheManifest manifest;
  std::string_view payload;
};

ParsedFile parse_header(const std::filesystem::path& path, std::string_view text) {
  std::string_view lines[4];
  std::size_t pos = 0;
  for (auto& line : lines) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) format_error(path, "truncated header");
    line = text.substr(pos, nl - pos);
    pos = nl + 1;
  }

  ParsedFile parsed;
  CacheManifest& m = parsed.manifest;
  if (!lines[0].starts_with(kMagic)) format_error(path, "not a trace cache file");
  if (!parse_int(lines[0].substr(kMagic.size()), m.format_version)) {
    format_error(path, "malformed version line");
  }
  if (m.format_version != kCacheFormatVersion) {
    throw Error(ErrorKind::Version, path.string() + ": unsupported cache version " +
                                        std::to_string(m.format_version));
  }

  std::vector<std::string_view> v;
  if (!parse_fields(lines[1], "# curve ", {"a", "b", "delta"}, v) || !parse_int(v[0], m.curve_a) ||
      !parse_int(v[1], m.curve_b) || !parse_int(v[2], m.delta)) {
    format_error(path, "malformed curve line");
  }
  if (!parse_fields(lines[2], "# ", {"xmax", "count", "checksum"}, v) ||
      !parse_int(v[0], m.xmax) || !parse_int(v[1], m.record_count) || v[2].size() != 16 ||
      !parse_int(v[2], m.checksum, 16)) {
    format_error(path, "malformed manifest line");
  }
  if (lines[3] != kColumns) format_error(path, "missing column header");
  parsed.payload = text.substr(pos);
  return parsed;
}

}  // namespace

u64 fnv1a64(std::string_view bytes) {
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string record_payload(const ApTable& table) {
  std::string out;
  out.reserve(table.size() * 12);
  for (const auto& rec : table.records()) {
    out += std::to_string(rec.p);
    out += ',';
    out += std::to_string(rec.ap);
    out += '\n';
  }
  return out;
}

void save(const ApTable& table, const std::filesystem::path& path) {
  const std::string payload = record_payload(table);
  char checksum[17];
  std::snprintf(checksum, sizeof checksum, "%016" PRIx64, fnv1a64(payload));

  std::string text;
  text += kMagic;
  text += std::to_string(kCacheFormatVersion) + "\n";
  text += "# curve a=" + std::to_string(table.curve().a()) + " b=" + std::to_string(table.curve().b()) +
          " delta=" + std::to_string(table.curve().delta()) + "\n";
  text += "# xmax=" + std::to_string(table.xmax()) + " count=" + std::to_string(table.size()) +
          " checksum=" + checksum + "\n";
  text += kColumns;
  text += '\n';
  text += payload;

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot move cache into place at " + path.string());
  }
}

CacheManifest read_manifest(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  return parse_header(path, text).manifest;
}

ApTable load(const std::filesystem::path& path, const Curve& expected_curve) {
  const std::string text = read_file(path);
  const ParsedFile parsed = parse_header(path, text);
  const CacheManifest& m = parsed.manifest;

  if (m.curve_a != expected_curve.a() || m.curve_b != expected_curve.b()) {
    throw Error(ErrorKind::CurveMismatch,
                path.string() + ": cache is for a=" + std::to_string(m.curve_a) +
                    " b=" + std::to_string(m.curve_b) + ", expected a=" +
                    std::to_string(expected_curve.a()) + " b=" + std::to_string(expected_curve.b()));
  }
  if (m.delta != expected_curve.delta()) format_error(path, "discriminant does not match curve");
  if (fnv1a64(parsed.payload) != m.checksum) {
    throw Error(ErrorKind::Checksum, path.string() + ": record checksum mismatch");
  }

  std::vector<ApRecord> records;
  records.reserve(m.record_count);
  std::string_view rest = parsed.payload;
  while (!rest.empty()) {
    const std::size_t nl = rest.find('\n');
    if (nl == std::string_view::npos) format_error(path, "unterminated record line");
    const std::string_view line = rest.substr(0, nl);
    rest.remove_prefix(nl + 1);
    const std::size_t comma = line.find(',');
    ApRecord rec{};
    if (comma == std::string_view::npos || !parse_int(line.substr(0, comma), rec.p) ||
        !parse_int(line.substr(comma + 1), rec.ap)) {
      format_error(path, "malformed record '" + std::string(line) + "'");
    }
    records.push_back(rec);
  }
  if (records.size() != m.record_count) format_error(path, "record count does not match manifest");
  return ApTable(expected_curve, m.xmax, std::move(records));
}

ApTable extend(const ApTable& table, u64 new_x, const TraceOptions& options) {
  if (new_x < table.xmax()) {
    throw Error(ErrorKind::InvalidArgument, "extend: new bound " + std::to_string(new_x) +
                                                " is below the table bound " +
                                                std::to_string(table.xmax()));
  }
  std::vector<ApRecord> records = table.records();
  const auto added = trace_range(table.curve(), table.xmax(), new_x, options);
  records.insert(records.end(), added.begin(), added.end());
  return ApTable(table.curve(), new_x, std::move(records));
}

}  // namespace shafstats
