#include "dloc/net/trace_log.hpp"

#include <ostream>
#include <sstream>

#include "dloc/net/rng.hpp"

namespace dloc::net {

void TraceLog::append(std::uint64_t time, NodeId src, NodeId dst, OpId op,
                      std::span<const LinkId> links) {
  ++count_;
  total_links_ += links.size();
  std::uint64_t h = mix64(digest_ ^ time);
  h = mix64(h ^ (std::uint64_t{src.value} << 32 | dst.value));
  h = mix64(h ^ links.size());
  for (LinkId l : links) h = mix64(h ^ l.value);
  digest_ = h;
  if (keep_records_) {
    records_.push_back(TraceRecord{time, src, dst, op, {links.begin(), links.end()}});
  }
}

std::string format_record(const TraceRecord& record) {
  std::ostringstream out;
  out << record.time << ' ' << record.src.value << ' ' << record.dst.value << ' '
      << record.links.size() << ' ';
  if (record.links.empty()) {
    out << '-';
  } else {
    for (std::size_t i = 0; i < record.links.size(); ++i) {
      if (i != 0) out << ',';
      out << record.links[i].value;
    }
  }
  return out.str();
}

void TraceLog::write(std::ostream& out) const {
  for (const TraceRecord& r : records_) out << format_record(r) << '\n';
}

std::string TraceLog::serialize() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

}  // namespace dloc::net
