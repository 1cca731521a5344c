#include "slantcheck/report.hpp"

#include "slantcheck/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slantcheck {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::vacuous: return "vacuous";
  }
  return "?";
}

Status CheckReport::status() const {
  bool any_pass = false;
  bool any_vacuous = false;
  for (const auto& r : records) {
    if (r.status == Status::fail) return Status::fail;
    any_pass = any_pass || r.status == Status::pass;
    any_vacuous = any_vacuous || r.status == Status::vacuous;
  }
  if (any_pass) return Status::pass;
  return any_vacuous ? Status::vacuous : Status::skipped;
}

bool CheckReport::pass() const {
  for (const auto& r : records) {
    if (!r.pass()) return false;
  }
  return true;
}

const IdentityRecord* CheckReport::find(std::string_view id) const {
  for (const auto& r : records) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

void Tolerances::validate() const {
  const std::pair<const char*, double> fields[] = {{"algebraic", algebraic},
                                                   {"derivative", derivative},
                                                   {"fd_oracle", fd_oracle},
                                                   {"angle_constancy", angle_constancy},
                                                   {"cluster_gap", cluster_gap}};
  for (const auto& [name, v] : fields) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw InputError(std::string("tolerance '") + name + "' must be finite and strictly positive");
    }
  }
}

void ResidualAccumulator::observe(double residual) {
  point_has_data_ = true;
  if (std::isnan(residual)) {
    nan_ = true;
    return;
  }
  max_ = std::max(max_, std::abs(residual));
}

void ResidualAccumulator::end_point() {
  if (point_has_data_) ++points_;
  point_has_data_ = false;
}

IdentityRecord ResidualAccumulator::finish(std::optional<std::string> note) const {
  IdentityRecord r;
  r.id = id_;
  r.kind = kind_;
  r.points = points_;
  r.max_residual = nan_ ? std::nan("") : max_;
  r.tolerance = tol_;
  r.note = std::move(note);
  if (points_ == 0) {
    r.status = kind_ == RecordKind::implication ? Status::vacuous : Status::skipped;
    if (!r.note) {
      r.note = kind_ == RecordKind::implication ? "hypothesis never held at sample resolution"
                                                : "no applicable test vectors";
    }
  } else {
    r.status = (!nan_ && max_ <= tol_) ? Status::pass : Status::fail;
  }
  return r;
}

ResidualAccumulator& RecordSet::get(const std::string& id, double tolerance, RecordKind kind) {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == id) return accs_[i];
  }
  ids_.push_back(id);
  accs_.emplace_back(id, tolerance, kind);
  notes_.emplace_back();
  return accs_.back();
}

void RecordSet::note(const std::string& id, std::string text) {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == id) {
      if (!notes_[i]) notes_[i] = std::move(text);
      return;
    }
  }
  throw std::logic_error("note for unknown record " + id);
}

void RecordSet::end_point() {
  for (auto& a : accs_) a.end_point();
}

std::vector<IdentityRecord> RecordSet::finish() const {
  std::vector<IdentityRecord> out;
  out.reserve(accs_.size());
  for (std::size_t i = 0; i < accs_.size(); ++i) out.push_back(accs_[i].finish(notes_[i]));
  return out;
}

IdentityRecord skipped_record(std::string id, double tolerance, std::string note) {
  IdentityRecord r;
  r.id = std::move(id);
  r.tolerance = tolerance;
  r.status = Status::skipped;
  r.note = std::move(note);
  return r;
}

}  // namespace slantcheck
