#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "hirenet/error.hpp"

namespace hirenet {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == name) return static_cast<int>(c);
    return -1;
  }
};

/// RFC-4180 reader: quoted fields may contain commas, escaped quotes and
/// newlines; accepts both LF and CRLF. The first record is the header.
inline CsvTable read_csv(std::istream& in, const std::string& what = "csv") {
  CsvTable table;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t line = 1;

  auto end_field = [&] {
    record.push_back(field);
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    if (!table.header.empty() && record.size() != table.header.size())
      throw InputError(what + ": line " + std::to_string(line) + ": expected " +
                       std::to_string(table.header.size()) + " fields, got " +
                       std::to_string(record.size()));
    if (table.header.empty())
      table.header = std::move(record);
    else
      table.rows.push_back(std::move(record));
    record.clear();
  };

  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
        if (c == '\n') ++line;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      // swallowed; LF (or EOF) terminates the record
    } else if (c == '\n') {
      end_record();
      ++line;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw InputError(what + ": unterminated quoted field");
  if (!field.empty() || !record.empty()) end_record();
  if (!any) throw InputError(what + ": empty input");
  if (table.header.empty()) throw InputError(what + ": missing header row");
  return table;
}

inline void write_csv_field(std::ostream& out, const std::string& v) {
  if (v.find_first_of(",\"\r\n") == std::string::npos) {
    out << v;
    return;
  }
  out << '"';
  for (char c : v) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

inline void write_csv_row(std::ostream& out,
                          const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    write_csv_field(out, fields[i]);
  }
  out << "\r\n";
}

}  // namespace hirenet
