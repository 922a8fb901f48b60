#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dloc/net/ids.hpp"

namespace dloc::net {

struct TraceRecord {
  std::uint64_t time = 0;  // delivery tick
  NodeId src;
  NodeId dst;
  OpId op = 0;
  std::vector<LinkId> links;
};

/// Every delivered message, in delivery order. Serializes to one line per
/// message: `time src dst hops link,link,...` ("-" for a local delivery).
class TraceLog {
 public:
  explicit TraceLog(bool keep_records = false) : keep_records_(keep_records) {}

  void append(std::uint64_t time, NodeId src, NodeId dst, OpId op, std::span<const LinkId> links);

  std::span<const TraceRecord> records() const { return records_; }
  bool keeps_records() const { return keep_records_; }
  std::uint64_t size() const { return count_; }
  std::uint64_t total_links() const { return total_links_; }

  /// Order-sensitive digest of every appended record, maintained even when
  /// records are not kept. Equal digests mean equal logs (up to hashing).
  std::uint64_t digest() const { return digest_; }

  void write(std::ostream& out) const;
  std::string serialize() const;

 private:
  bool keep_records_;
  std::vector<TraceRecord> records_;
  std::uint64_t count_ = 0;
  std::uint64_t total_links_ = 0;
  std::uint64_t digest_ = 0x84222325cbf29ce4ULL;
};

std::string format_record(const TraceRecord& record);

}  // namespace dloc::net
