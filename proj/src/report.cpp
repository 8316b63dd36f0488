#include "dialectic/report.hpp"

#include <sstream>

namespace dialectic {

check& report::add(std::string name) {
  checks_.push_back(check{});
  checks_.back().name = std::move(name);
  return checks_.back();
}

void report::merge(const report& other, std::string_view prefix) {
  for (check c : other.checks_) {
    if (!prefix.empty()) c.name = std::string(prefix) + "/" + c.name;
    checks_.push_back(std::move(c));
  }
}

bool report::ok() const {
  for (const auto& c : checks_)
    if (!c.passed()) return false;
  return true;
}

std::uint64_t report::violations() const {
  std::uint64_t n = 0;
  for (const auto& c : checks_) n += c.violations;
  return n;
}

const check* report::find(std::string_view name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

std::string report::text() const {
  std::ostringstream out;
  for (const auto& c : checks_) {
    out << (c.passed() ? "PASS " : "FAIL ") << c.name << " (" << c.instances
        << " instances";
    if (c.violations) out << ", " << c.violations << " violations";
    out << ")";
    if (!c.applicable) out << " not applicable";
    if (!c.note.empty()) out << " " << c.note;
    out << "\n";
    for (const auto& e : c.examples) out << "  " << e << "\n";
  }
  return out.str();
}

std::string report::tsv() const {
  std::ostringstream out;
  out << "status\tcheck\tinstances\tviolations\tnote\n";
  for (const auto& c : checks_) {
    out << (c.passed() ? "PASS" : "FAIL") << "\t" << c.name << "\t"
        << c.instances << "\t" << c.violations << "\t";
    if (!c.applicable) out << "not applicable";
    if (!c.note.empty()) out << (c.applicable ? "" : "; ") << c.note;
    out << "\n";
  }
  return out.str();
}

}  // namespace dialectic
