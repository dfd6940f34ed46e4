#pragma once

// A distributed architecture: named components, each observing its own
// disjoint, non-empty slice of the proposition alphabet.  Component order is
// declaration order and doubles as the priority order used when obligations
// are routed.

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltlmon {

class Architecture {
 public:
  struct Component {
    std::string name;
    std::set<std::string> props;
  };

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit Architecture(std::vector<Component> components) {
    if (components.empty())
      throw std::invalid_argument("an architecture needs components");
    std::set<std::string> names;
    for (std::size_t i = 0; i < components.size(); ++i) {
      const Component& c = components[i];
      if (c.name.empty())
        throw std::invalid_argument("components need names");
      if (!names.insert(c.name).second)
        throw std::invalid_argument("duplicate component name '" + c.name +
                                    "'");
      if (c.props.empty())
        throw std::invalid_argument("component '" + c.name +
                                    "' observes no propositions");
      for (const std::string& p : c.props) {
        if (!owner_.emplace(p, i).second)
          throw std::invalid_argument("proposition '" + p +
                                      "' is observed by two components");
        alphabet_.insert(p);
      }
    }
    components_ = std::move(components);
  }

  std::size_t size() const { return components_.size(); }
  const Component& component(std::size_t i) const { return components_.at(i); }
  const std::vector<Component>& components() const { return components_; }
  const std::set<std::string>& alphabet() const { return alphabet_; }

  // Index of the component observing p, or npos.
  std::size_t owner(const std::string& p) const {
    auto it = owner_.find(p);
    return it == owner_.end() ? npos : it->second;
  }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < components_.size(); ++i)
      if (components_[i].name == name) return i;
    return npos;
  }

 private:
  std::vector<Component> components_;
  std::map<std::string, std::size_t> owner_;
  std::set<std::string> alphabet_;
};

}  // namespace ltlmon
