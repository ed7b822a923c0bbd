#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ds/errors.hpp"

namespace ds {

// Sets of configurations are stored as single machine words; frames larger
// than this cannot host ConfigSets and the failure is explicit.
inline constexpr std::size_t kMaxSetConfigs = 26;

struct Variable {
  std::string name;
  std::vector<std::string> values;  // ordered; position = value index

  bool operator==(const Variable&) const = default;
};

inline void validate_variable(const Variable& v) {
  if (v.name.empty()) throw model_error("variable name must be nonempty");
  if (v.values.size() < 2)
    throw model_error("variable '" + v.name + "' needs at least 2 values");
  std::unordered_set<std::string> seen;
  for (const auto& val : v.values) {
    if (val.empty())
      throw model_error("variable '" + v.name + "' has an empty value label");
    if (!seen.insert(val).second)
      throw model_error("variable '" + v.name + "' has duplicate value '" + val + "'");
  }
}

// An ordered list of variables; configurations are indexed mixed-radix with
// the first variable most significant.
class Frame {
 public:
  Frame() = default;

  explicit Frame(std::vector<Variable> vars) : vars_(std::move(vars)) {
    if (vars_.empty()) throw model_error("frame needs at least one variable");
    std::unordered_set<std::string> names;
    for (const auto& v : vars_) {
      validate_variable(v);
      if (!names.insert(v.name).second)
        throw model_error("duplicate variable name '" + v.name + "' in frame");
    }
    weights_.assign(vars_.size(), 1);
    size_ = 1;
    for (std::size_t i = vars_.size(); i-- > 0;) {
      weights_[i] = size_;
      size_ *= vars_[i].values.size();
    }
  }

  const std::vector<Variable>& variables() const { return vars_; }
  std::size_t size() const { return size_; }

  std::size_t position_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return i;
    throw model_error("variable '" + name + "' not in frame");
  }

  bool has_variable(const std::string& name) const {
    return std::any_of(vars_.begin(), vars_.end(),
                       [&](const Variable& v) { return v.name == name; });
  }

  // Value index of the variable at `pos` within configuration `config`.
  std::size_t value_index(std::size_t config, std::size_t pos) const {
    return (config / weights_[pos]) % vars_[pos].values.size();
  }

  std::size_t index_of(const std::map<std::string, std::string>& assignment) const {
    if (assignment.size() != vars_.size())
      throw model_error("assignment must cover every frame variable exactly once");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = assignment.find(vars_[i].name);
      if (it == assignment.end())
        throw model_error("assignment missing variable '" + vars_[i].name + "'");
      const auto& vals = vars_[i].values;
      auto vit = std::find(vals.begin(), vals.end(), it->second);
      if (vit == vals.end())
        throw model_error("unknown value '" + it->second + "' for variable '" +
                          vars_[i].name + "'");
      idx += weights_[i] * static_cast<std::size_t>(vit - vals.begin());
    }
    return idx;
  }

  // "A=1&E=1"
  std::string config_label(std::size_t config) const {
    std::string out;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (i) out += '&';
      out += vars_[i].name;
      out += '=';
      out += vars_[i].values[value_index(config, i)];
    }
    return out;
  }

  bool operator==(const Frame&) const = default;

 private:
  std::vector<Variable> vars_;
  std::vector<std::size_t> weights_;
  std::size_t size_ = 0;
};

// Maps each configuration of `from` to the configuration of `to` obtained by
// restriction. Every variable of `to` must occur in `from` with the same
// value list.
inline std::vector<std::size_t> restriction_map(const Frame& from, const Frame& to) {
  std::vector<std::size_t> pos;
  pos.reserve(to.variables().size());
  for (const auto& v : to.variables()) {
    std::size_t p = from.position_of(v.name);
    if (from.variables()[p].values != v.values)
      throw model_error("variable '" + v.name + "' has mismatched values across frames");
    pos.push_back(p);
  }
  std::vector<std::size_t> out(from.size());
  for (std::size_t c = 0; c < from.size(); ++c) {
    std::size_t idx = 0;
    std::size_t weight = to.size();
    for (std::size_t i = 0; i < pos.size(); ++i) {
      weight /= to.variables()[i].values.size();
      idx += weight * from.value_index(c, pos[i]);
    }
    out[c] = idx;
  }
  return out;
}

// A subset of a frame's configurations, bit i set <=> configuration i included.
class ConfigSet {
 public:
  ConfigSet() = default;

  ConfigSet(Frame frame, std::uint64_t bits) : frame_(std::move(frame)), bits_(bits) {
    if (frame_.size() > kMaxSetConfigs)
      throw model_error("frame has " + std::to_string(frame_.size()) +
                        " configurations, above the set-construction cap of " +
                        std::to_string(kMaxSetConfigs));
    if (bits_ >> frame_.size())
      throw model_error("configuration index out of range for frame");
  }

  static ConfigSet empty(Frame frame) { return ConfigSet(std::move(frame), 0); }

  static ConfigSet full(Frame frame) {
    std::uint64_t all = (frame.size() >= 64) ? ~0ull : ((1ull << frame.size()) - 1);
    return ConfigSet(std::move(frame), all);
  }

  static ConfigSet of(Frame frame, std::initializer_list<std::size_t> configs) {
    std::uint64_t bits = 0;
    for (std::size_t c : configs) bits |= 1ull << c;
    return ConfigSet(std::move(frame), bits);
  }

  const Frame& frame() const { return frame_; }
  std::uint64_t bits() const { return bits_; }
  bool is_empty() const { return bits_ == 0; }
  bool contains(std::size_t config) const { return (bits_ >> config) & 1; }
  std::size_t count() const { return std::popcount(bits_); }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b; b &= b - 1)
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  ConfigSet operator|(const ConfigSet& o) const {
    require_same_frame(o);
    return ConfigSet(frame_, bits_ | o.bits_);
  }
  ConfigSet operator&(const ConfigSet& o) const {
    require_same_frame(o);
    return ConfigSet(frame_, bits_ & o.bits_);
  }
  ConfigSet operator~() const { return ConfigSet(frame_, ~bits_ & full_mask()); }

  bool is_subset_of(const ConfigSet& o) const {
    require_same_frame(o);
    return (bits_ & ~o.bits_) == 0;
  }

  bool operator==(const ConfigSet&) const = default;

  // "{A=1&E=1, A=0&E=1}" -- members ascending by configuration index.
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (std::size_t c : members()) {
      if (!first) out += ", ";
      out += frame_.config_label(c);
      first = false;
    }
    out += '}';
    return out;
  }

 private:
  void require_same_frame(const ConfigSet& o) const {
    if (frame_ != o.frame_) throw model_error("frame mismatch between config sets");
  }
  std::uint64_t full_mask() const {
    return (frame_.size() >= 64) ? ~0ull : ((1ull << frame_.size()) - 1);
  }

  Frame frame_;
  std::uint64_t bits_ = 0;
};

// A target configuration is a member iff some member of s restricts to it.
inline ConfigSet project_set(const ConfigSet& s, const Frame& target) {
  auto map = restriction_map(s.frame(), target);
  std::uint64_t out = 0;
  for (std::size_t c : s.members()) out |= 1ull << map[c];
  return ConfigSet(target, out);
}

// A target configuration is a member iff its restriction to s's frame is in s.
inline ConfigSet cyl_extend_set(const ConfigSet& s, const Frame& target) {
  auto map = restriction_map(target, s.frame());
  std::uint64_t out = 0;
  for (std::size_t c = 0; c < target.size(); ++c)
    if (s.contains(map[c])) out |= 1ull << c;
  return ConfigSet(target, out);
}

}  // namespace ds
