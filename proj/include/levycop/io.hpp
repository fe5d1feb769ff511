#pragma once

#include <iosfwd>
#include <string>

#include "levycop/simulation.hpp"

namespace levycop {

std::string kind_name(JumpKind kind);
JumpKind parse_kind(const std::string& name);

// `time,w1,w2` rows sorted by time, header included.
void write_path_csv(std::ostream& out, const JumpPath& path);

// `time,w1,w2,kind` rows, kind in {par, perp1, perp2, both}.
void write_classified_csv(std::ostream& out, const ClassifiedPath& path);

// Parses `time,w1,w2,kind`; malformed rows raise with the line number.
ClassifiedPath read_classified_csv(std::istream& in, double horizon_hint = 0.0);

// Parses `time,w1,w2`; malformed rows raise with the line number.
JumpPath read_path_csv(std::istream& in, double horizon_hint = 0.0);

// Round-trippable decimal formatting used by every CSV writer.
std::string format_double(double v);

struct DanishSummary {
  ClassifiedPath path;
  long total_rows = 0;
  long retained = 0;
};

// Danish fire-loss preprocessing: keeps rows where building and content losses
// are both above 0.75 (millions), or one is above 0.75 and the other is zero;
// weights are log(loss) - log(0.75); kinds par / perp1 / perp2. Times are the
// event index scaled to [0, T] with T = span of days / 365 unless a positive
// horizon_override is given. Input columns: date (YYYY-MM-DD), building loss,
// content loss; malformed rows raise with the line number.
DanishSummary preprocess_danish(std::istream& in, double horizon_override = 0.0);

}  // namespace levycop
