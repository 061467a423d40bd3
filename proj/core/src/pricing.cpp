#include "railtac/pricing.hpp"

#include <algorithm>
#include <stdexcept>

namespace railtac {

namespace {

template <typename V>
const V* find_path_entry(const std::vector<std::pair<std::string, V>>& entries,
                         const std::string& path_id) {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), path_id,
      [](const auto& entry, const std::string& key) { return entry.first < key; });
  if (it == entries.end() || it->first != path_id) return nullptr;
  return &it->second;
}

template <typename V>
bool sorted_unique(const std::vector<std::pair<std::string, V>>& entries) {
  for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
    if (!(entries[i].first < entries[i + 1].first)) return false;
  }
  return true;
}

}  // namespace

SchemeKind TacScheme::kind() const {
  return static_cast<SchemeKind>(variant.index());
}

double TacScheme::proportion_at(const std::string& path_id, double t) const {
  if (t < 0.0) throw std::out_of_range("proportion_at: time before horizon");
  if (const auto* prop = std::get_if<Proportional>(&variant)) {
    return prop->p;
  }
  if (const auto* pb = std::get_if<PathBased>(&variant)) {
    const double* p = find_path_entry(pb->p_by_path, path_id);
    if (!p) throw std::invalid_argument("scheme has no entry for path '" + path_id + "'");
    return *p;
  }
  const auto& tv = std::get<TimeVarying>(variant);
  if (t > tv.grid_h.back()) {
    throw std::out_of_range("proportion_at: time beyond scheme horizon");
  }
  const auto* values = find_path_entry(tv.p_by_path, path_id);
  if (!values) throw std::invalid_argument("scheme has no entry for path '" + path_id + "'");
  auto it = std::upper_bound(tv.grid_h.begin(), tv.grid_h.end(), t);
  std::size_t interval = it == tv.grid_h.begin()
                             ? 0
                             : static_cast<std::size_t>(it - tv.grid_h.begin()) - 1;
  interval = std::min(interval, values->size() - 1);  // delta_k closes the last interval
  return (*values)[interval];
}

void TacScheme::validate() const {
  if (!(p_min <= p_max)) {
    throw std::invalid_argument("scheme bounds inverted");
  }
  const auto check_p = [&](double p, const std::string& where) {
    if (p < p_min || p > p_max) {
      throw std::invalid_argument("proportion " + std::to_string(p) + " for " +
                                  where + " outside [" + std::to_string(p_min) +
                                  ", " + std::to_string(p_max) + "]");
    }
  };
  if (const auto* prop = std::get_if<Proportional>(&variant)) {
    check_p(prop->p, "all paths");
    return;
  }
  if (const auto* pb = std::get_if<PathBased>(&variant)) {
    if (!sorted_unique(pb->p_by_path)) {
      throw std::invalid_argument("path-based entries must be sorted by unique path id");
    }
    for (const auto& [path_id, p] : pb->p_by_path) check_p(p, "path '" + path_id + "'");
    return;
  }
  const auto& tv = std::get<TimeVarying>(variant);
  if (tv.grid_h.size() < 2 || tv.grid_h.front() != 0.0) {
    throw std::invalid_argument("time grid must start at 0 with at least one interval");
  }
  for (std::size_t i = 0; i + 1 < tv.grid_h.size(); ++i) {
    if (!(tv.grid_h[i] < tv.grid_h[i + 1])) {
      throw std::invalid_argument("time grid must be strictly increasing");
    }
  }
  if (!sorted_unique(tv.p_by_path)) {
    throw std::invalid_argument("time-varying entries must be sorted by unique path id");
  }
  const std::size_t intervals = tv.grid_h.size() - 1;
  for (const auto& [path_id, values] : tv.p_by_path) {
    if (values.size() != intervals) {
      throw std::invalid_argument("path '" + path_id + "' must carry one value per interval");
    }
    for (double p : values) check_p(p, "path '" + path_id + "'");
  }
}

double lambda_at(const TacScheme& scheme, const Path& path, double t,
                 double c_ell) {
  if (path.reference_time_h <= 0.0) {
    throw std::invalid_argument("lambda_at: path '" + path.id +
                                "' has no commercial reference time");
  }
  return scheme.proportion_at(path.id, t) * c_ell / path.reference_time_h;
}

std::size_t VectorLayout::dimension() const {
  switch (kind) {
    case SchemeKind::proportional:
      return 1;
    case SchemeKind::path_based:
      return path_ids.size();
    case SchemeKind::time_varying:
      return path_ids.size() * (grid_h.size() - 1);
  }
  return 0;
}

std::vector<std::string> VectorLayout::coordinate_names() const {
  std::vector<std::string> names;
  switch (kind) {
    case SchemeKind::proportional:
      names.push_back("p");
      break;
    case SchemeKind::path_based:
      for (const std::string& id : path_ids) names.push_back("p[" + id + "]");
      break;
    case SchemeKind::time_varying:
      for (const std::string& id : path_ids) {
        for (std::size_t j = 0; j + 1 < grid_h.size(); ++j) {
          names.push_back("p[" + id + "][" + std::to_string(j) + "]");
        }
      }
      break;
  }
  return names;
}

DecisionVector to_vector(const TacScheme& scheme) {
  DecisionVector out;
  out.layout.kind = scheme.kind();
  out.layout.p_min = scheme.p_min;
  out.layout.p_max = scheme.p_max;
  if (const auto* prop = std::get_if<Proportional>(&scheme.variant)) {
    out.values.push_back(prop->p);
  } else if (const auto* pb = std::get_if<PathBased>(&scheme.variant)) {
    for (const auto& [path_id, p] : pb->p_by_path) {
      out.layout.path_ids.push_back(path_id);
      out.values.push_back(p);
    }
  } else {
    const auto& tv = std::get<TimeVarying>(scheme.variant);
    out.layout.grid_h = tv.grid_h;
    for (const auto& [path_id, values] : tv.p_by_path) {
      out.layout.path_ids.push_back(path_id);
      out.values.insert(out.values.end(), values.begin(), values.end());
    }
  }
  return out;
}

TacScheme from_vector(const VectorLayout& layout,
                      std::span<const double> values) {
  if (values.size() != layout.dimension()) {
    throw std::invalid_argument("decision vector length does not match layout");
  }
  for (double v : values) {
    if (v < layout.p_min || v > layout.p_max) {
      throw std::out_of_range("decision value " + std::to_string(v) +
                              " outside scheme bounds");
    }
  }
  TacScheme scheme;
  scheme.p_min = layout.p_min;
  scheme.p_max = layout.p_max;
  switch (layout.kind) {
    case SchemeKind::proportional:
      scheme.variant = Proportional{values[0]};
      break;
    case SchemeKind::path_based: {
      PathBased pb;
      for (std::size_t i = 0; i < layout.path_ids.size(); ++i) {
        pb.p_by_path.emplace_back(layout.path_ids[i], values[i]);
      }
      scheme.variant = std::move(pb);
      break;
    }
    case SchemeKind::time_varying: {
      TimeVarying tv;
      tv.grid_h = layout.grid_h;
      const std::size_t intervals = layout.grid_h.size() - 1;
      for (std::size_t i = 0; i < layout.path_ids.size(); ++i) {
        std::vector<double> row(values.begin() + i * intervals,
                                values.begin() + (i + 1) * intervals);
        tv.p_by_path.emplace_back(layout.path_ids[i], std::move(row));
      }
      scheme.variant = std::move(tv);
      break;
    }
  }
  scheme.validate();
  return scheme;
}

}  // namespace railtac
