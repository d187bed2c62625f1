#include "amlab/code_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace amlab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<std::string> directive(std::string_view line) {
  line = trim(line);
  if (line.empty() || line.front() != '#') return std::nullopt;
  line = trim(line.substr(1));
  constexpr std::string_view key = "scheme:";
  if (line.substr(0, key.size()) != key) return std::nullopt;
  return std::string(trim(line.substr(key.size())));
}

}  // namespace

CodeVector read_code(std::istream& in, SchemePtr scheme, const std::string& source) {
  std::map<VertexId, Rational> entries;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::Parse, source + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto d = directive(line)) {
      SchemeSpec spec;
      try {
        spec = SchemeSpec::parse(*d);
      } catch (const Error& e) {
        fail(e.what());
      }
      if (!scheme) scheme = Scheme::build(spec);
      else if (!(scheme->spec() == spec)) fail("file declares " + spec.to_string() + " but " + scheme->name() + " was requested");
      continue;
    }
    std::string_view body = line;
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    if (!scheme) fail("no scheme given and no '# scheme:' directive before the first vertex");
    Rational weight(1);
    std::string_view vertex_text = body;
    if (auto tab = body.find('\t'); tab != std::string_view::npos) {
      try {
        weight = parse_rational(trim(body.substr(0, tab)));
      } catch (const Error& e) {
        fail(e.what());
      }
      vertex_text = trim(body.substr(tab + 1));
    }
    VertexId id = 0;
    try {
      id = scheme->encode(scheme->parse_vertex(vertex_text));
    } catch (const Error& e) {
      fail(e.what());
    }
    if (entries.count(id)) fail("duplicate vertex " + std::string(vertex_text));
    if (weight != 0) entries.emplace(id, weight);
  }
  if (!scheme) throw Error(ErrorCode::Parse, source + ": empty file without a scheme directive");
  return CodeVector(scheme, std::move(entries));
}

CodeVector load_code(const std::string& path, SchemePtr scheme) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  return read_code(in, std::move(scheme), path);
}

std::optional<SchemeSpec> peek_scheme(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (auto d = directive(line)) return SchemeSpec::parse(*d);
  }
  return std::nullopt;
}

void write_code(std::ostream& out, const CodeVector& chi, const std::string& comment) {
  const Scheme& s = chi.scheme();
  out << "# scheme: " << s.name() << "\n";
  if (!comment.empty()) {
    std::istringstream lines(comment);
    std::string l;
    while (std::getline(lines, l)) out << "# " << l << "\n";
  }
  for (const auto& [id, w] : chi.entries()) {
    if (!chi.is_subset()) out << to_string(w) << "\t";
    out << s.format_id(id) << "\n";
  }
}

void save_code(const std::string& path, const CodeVector& chi, const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Config, "cannot write " + path);
  write_code(out, chi, comment);
}

}  // namespace amlab
