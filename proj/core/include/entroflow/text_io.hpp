#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace entroflow {

// Shortest round-trip-safe decimal for a double (17 significant
// digits); all numeric file output goes through this.
std::string format_g17(double value);

// One CSV record: comma-joined cells, LF terminator.  Cells are written
// verbatim; callers only pass numbers and bare identifiers.
std::string csv_line(std::span<const std::string> cells);

// Streaming JSON emitter with caller-controlled key order, 2-space
// indentation, and g17 floats.  Non-finite doubles become null.
class JsonWriter {
public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  // Literals must not decay to the bool overload.
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  std::string str() const { return out_; }

private:
  void prepare_slot();
  void newline_indent();
  std::string out_;
  // One frame per open container: whether it already holds an element.
  std::vector<bool> has_element_;
  bool pending_key_ = false;
};

std::string json_escape(std::string_view s);

// Write via temp file + rename so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& target, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace entroflow
