#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robreg/datagen.hpp"
#include "robreg/types.hpp"

namespace robreg {

// Flat INI-style key-value document: ordered sections of ordered pairs.
// Comments start with '#'. Serialization is deterministic.
class ConfigDoc {
 public:
  using Section = std::vector<std::pair<std::string, std::string>>;

  static ConfigDoc parse_string(const std::string& text);
  static ConfigDoc load(const std::string& path);
  std::string serialize() const;
  void save(const std::string& path) const;

  const std::string* find(const std::string& section,
                          const std::string& key) const;
  bool has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
  }
  void set(const std::string& section, const std::string& key,
           const std::string& value);

  // Typed access; "required" variants throw naming section.key.
  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  long get_long(const std::string& section, const std::string& key) const;
  long get_long(const std::string& section, const std::string& key,
                long fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const;

  const std::vector<std::pair<std::string, Section>>& sections() const {
    return sections_;
  }

 private:
  std::vector<std::pair<std::string, Section>> sections_;
};

// Shortest decimal text that parses back to the identical double.
std::string format_double(double v);
double parse_double(const std::string& s);

std::string format_vector(const Vec& v);       // comma-separated
Vec parse_vector(const std::string& s);
std::string format_ints(const std::vector<int>& v);
std::vector<int> parse_ints(const std::string& s);

// Columnar instance format: header "y,x_1,..,x_d,is_outlier", one CSV row
// per sample, numbers in round-trip form.
void write_instance_csv(const std::string& path,
                        const RegressionInstance& instance);

// Parses the columnar format; malformed content reports the line number.
// Truth is not populated (that lives in the metadata sidecar); the
// is_outlier column is returned for cross-checks.
struct LoadedInstance {
  RegressionInstance instance;
  std::vector<int> outlier_flags;
};
LoadedInstance read_instance_csv(const std::string& path);

// Sidecar metadata: the generator spec plus the truth block.
ConfigDoc instance_meta(const GeneratorSpec& spec, const GeneratedInstance& g);
void apply_meta(const ConfigDoc& meta, RegressionInstance& instance);

GeneratorSpec spec_from_doc(const ConfigDoc& doc,
                            const std::string& section = "data");
void spec_to_doc(const GeneratorSpec& spec, ConfigDoc& doc,
                 const std::string& section = "data");

bool file_exists(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace robreg
