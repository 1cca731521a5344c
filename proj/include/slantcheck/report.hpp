#pragma once

#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slantcheck {

enum class Status { pass, fail, skipped, vacuous };

std::string_view status_name(Status s);

/// Identity records must hold on every valid input; implication records quantify over the
/// sample points where a hypothesis holds and are vacuous when it never does.
enum class RecordKind { identity, implication };

struct IdentityRecord {
  std::string id;
  RecordKind kind = RecordKind::identity;
  int points = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  Status status = Status::skipped;
  std::optional<std::string> note;

  bool pass() const { return status == Status::pass; }
};

struct CheckReport {
  std::string suite_id;
  std::vector<IdentityRecord> records;
  std::optional<std::string> note;

  /// fail if any record failed; skipped if every record was skipped; vacuous if nothing passed
  /// and something was vacuous; pass otherwise.
  Status status() const;

  /// True exactly when every record passed.
  bool pass() const;

  const IdentityRecord* find(std::string_view id) const;
};

struct Tolerances {
  double algebraic = 1e-9;
  double derivative = 1e-6;
  double fd_oracle = 1e-5;
  double angle_constancy = 1e-7;
  double cluster_gap = 1e-8;

  /// Throws InputError unless every field is finite and strictly positive.
  void validate() const;
};

/// Accumulates the max-norm residual of one identity over points and test vectors.
class ResidualAccumulator {
 public:
  ResidualAccumulator(std::string id, double tolerance, RecordKind kind = RecordKind::identity)
      : id_(std::move(id)), tol_(tolerance), kind_(kind) {}

  /// Records one residual for the current point.
  void observe(double residual);
  /// Marks the end of a sample point that contributed at least one residual.
  void end_point();

  const std::string& id() const { return id_; }
  double max_residual() const { return max_; }
  bool any() const { return points_ > 0; }

  IdentityRecord finish(std::optional<std::string> note = std::nullopt) const;

 private:
  std::string id_;
  double tol_;
  RecordKind kind_;
  double max_ = 0.0;
  bool nan_ = false;
  int points_ = 0;
  bool point_has_data_ = false;
};

/// Ordered collection of accumulators keyed by identity id, shared across sample points.
class RecordSet {
 public:
  ResidualAccumulator& get(const std::string& id, double tolerance, RecordKind kind = RecordKind::identity);
  /// Attaches a note to a record; the first note for an id wins.
  void note(const std::string& id, std::string text);
  /// Closes the current sample point on every accumulator.
  void end_point();
  std::vector<IdentityRecord> finish() const;

 private:
  std::deque<ResidualAccumulator> accs_;  // stable references
  std::vector<std::optional<std::string>> notes_;
  std::vector<std::string> ids_;
};

IdentityRecord skipped_record(std::string id, double tolerance, std::string note);

}  // namespace slantcheck
