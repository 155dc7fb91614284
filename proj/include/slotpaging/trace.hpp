#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slotpaging/core.hpp"
#include "slotpaging/laminar.hpp"

namespace slotpag {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A parsed trace holds either slot requests (the usual case) or page-set
// requests (written as a single {p1,p2,...} token per line, used together
// with a pagefamily block).
struct Trace {
  int k = 0;
  SlotSetFamily family;
  std::vector<LaminarForest::Set> page_family;
  std::vector<Request> slot_requests;
  std::vector<LaminarForest::Set> page_set_requests;

  bool is_page_set() const { return !page_set_requests.empty(); }

  RequestSequence as_sequence() const {
    return RequestSequence{k, family, slot_requests};
  }

  PageSetSequence as_page_sequence() const {
    return PageSetSequence{k, page_family, page_set_requests};
  }
};

namespace detail {

inline std::vector<std::int64_t> parse_int_list(const std::string& tok,
                                                int line_no) {
  std::vector<std::int64_t> out;
  std::string item;
  std::istringstream in(tok);
  while (std::getline(in, item, ',')) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (...) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": bad integer list '" + tok + "'");
    }
  }
  if (out.empty())
    throw ParseError("line " + std::to_string(line_no) + ": empty list");
  return out;
}

inline SlotSet parse_slot_spec(const std::string& tok, int k, int line_no) {
  if (tok == "*") return full_slots(k);
  std::string body = tok;
  if (tok.front() == '{') {
    if (tok.back() != '}')
      throw ParseError("line " + std::to_string(line_no) + ": bad slot set '" +
                       tok + "'");
    body = tok.substr(1, tok.size() - 2);
  }
  SlotSet s = 0;
  for (std::int64_t j : parse_int_list(body, line_no)) {
    if (j < 1 || j > k)
      throw ParseError("line " + std::to_string(line_no) + ": slot " +
                       std::to_string(j) + " out of range 1.." +
                       std::to_string(k));
    s |= slot_bit(static_cast<int>(j));
  }
  return s;
}

}  // namespace detail

inline Trace parse_trace(std::istream& in) {
  Trace tr;
  enum class Block { kNone, kFamily, kPageFamily };
  Block block = Block::kNone;
  bool have_k = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;

    if (toks[0] == "k" && toks.size() == 2) {
      tr.k = std::stoi(toks[1]);
      if (tr.k < 1 || tr.k > kMaxSlots)
        throw ParseError("line " + std::to_string(line_no) + ": k=" + toks[1] +
                         " out of range 1.." + std::to_string(kMaxSlots));
      have_k = true;
      continue;
    }
    if (toks[0] == "family" && toks.size() == 1) {
      block = Block::kFamily;
      continue;
    }
    if (toks[0] == "pagefamily" && toks.size() == 1) {
      block = Block::kPageFamily;
      continue;
    }
    if (!have_k)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'k <int>' before anything else");

    if (toks.size() == 1 && toks[0].front() != '{') {
      // Single plain token: a family-block line.
      if (block == Block::kFamily) {
        tr.family.push_back(detail::parse_slot_spec(toks[0], tr.k, line_no));
        continue;
      }
      if (block == Block::kPageFamily) {
        tr.page_family.push_back(detail::parse_int_list(toks[0], line_no));
        std::sort(tr.page_family.back().begin(), tr.page_family.back().end());
        continue;
      }
      throw ParseError("line " + std::to_string(line_no) +
                       ": unexpected token '" + toks[0] + "'");
    }

    block = Block::kNone;
    if (toks[0].front() == '{') {
      if (toks.size() != 1)
        throw ParseError("line " + std::to_string(line_no) +
                         ": page-set request takes a single token");
      std::string body = toks[0];
      if (body.back() != '}')
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad page set '" + body + "'");
      auto pages = detail::parse_int_list(body.substr(1, body.size() - 2),
                                          line_no);
      std::sort(pages.begin(), pages.end());
      tr.page_set_requests.push_back(std::move(pages));
      continue;
    }
    if (toks.size() != 2)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected '<page> <slots>'");
    PageId page;
    try {
      page = std::stoll(toks[0]);
    } catch (...) {
      throw ParseError("line " + std::to_string(line_no) + ": bad page id '" +
                       toks[0] + "'");
    }
    if (page < 0)
      throw ParseError("line " + std::to_string(line_no) +
                       ": page ids must be non-negative");
    tr.slot_requests.push_back(
        {page, detail::parse_slot_spec(toks[1], tr.k, line_no)});
  }
  if (!have_k) throw ParseError("trace has no 'k <int>' header");
  if (!tr.slot_requests.empty() && !tr.page_set_requests.empty())
    throw ParseError("trace mixes slot requests and page-set requests");
  return tr;
}

inline Trace parse_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open trace file " + path);
  return parse_trace(in);
}

inline void write_trace(std::ostream& out, const RequestSequence& seq) {
  out << "k " << seq.k << "\n";
  if (!seq.family.empty()) {
    out << "family\n";
    for (SlotSet s : seq.family) {
      if (s == full_slots(seq.k)) {
        out << "*\n";
        continue;
      }
      bool first = true;
      for (int j : slot_list(s)) {
        out << (first ? "" : ",") << j;
        first = false;
      }
      out << "\n";
    }
  }
  for (const Request& r : seq.requests)
    out << request_to_string(r, seq.k) << "\n";
}

inline void write_trace(std::ostream& out, const PageSetSequence& seq) {
  out << "k " << seq.k << "\n";
  if (!seq.family.empty()) {
    out << "pagefamily\n";
    for (const auto& set : seq.family) {
      for (std::size_t i = 0; i < set.size(); ++i)
        out << (i ? "," : "") << set[i];
      out << "\n";
    }
  }
  for (const auto& req : seq.requests) {
    out << '{';
    for (std::size_t i = 0; i < req.size(); ++i) out << (i ? "," : "") << req[i];
    out << "}\n";
  }
}

// Weights file: one '<page> <weight>' per line, weight an integer or 'a/b'.
inline WeightMap parse_weights(std::istream& in) {
  WeightMap w;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string ptok, wtok;
    if (!(ls >> ptok)) continue;
    if (!(ls >> wtok))
      throw ParseError("weights line " + std::to_string(line_no) +
                       ": expected '<page> <weight>'");
    PageId page;
    try {
      page = std::stoll(ptok);
    } catch (...) {
      throw ParseError("weights line " + std::to_string(line_no) +
                       ": bad page id");
    }
    auto r = parse_rat(wtok);
    if (!r || *r < 0)
      throw ParseError("weights line " + std::to_string(line_no) +
                       ": bad weight '" + wtok + "'");
    if (page == 0 && *r != 0)
      throw ParseError("weights line " + std::to_string(line_no) +
                       ": page 0 must have weight 0");
    w.weight_of[page] = *r;
  }
  return w;
}

inline WeightMap parse_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open weights file " + path);
  return parse_weights(in);
}

// Graph input for the vertex-cover reduction: 'n <int>', 'k <int>', and one
// 'e <u> <v>' line per edge, vertices 0-based.
struct VCGraph {
  int n = 0;
  int k = 0;
  std::vector<std::pair<int, int>> edges;
};

inline VCGraph parse_graph(std::istream& in) {
  VCGraph g;
  bool have_n = false, have_k = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "n" && (ls >> g.n)) {
      have_n = true;
    } else if (tag == "k" && (ls >> g.k)) {
      have_k = true;
    } else if (tag == "e") {
      int u, v;
      if (!(ls >> u >> v))
        throw ParseError("graph line " + std::to_string(line_no) +
                         ": expected 'e <u> <v>'");
      if (u > v) std::swap(u, v);
      g.edges.emplace_back(u, v);
    } else {
      throw ParseError("graph line " + std::to_string(line_no) +
                       ": unexpected '" + tag + "'");
    }
  }
  if (!have_n || !have_k) throw ParseError("graph needs 'n' and 'k' lines");
  for (auto [u, v] : g.edges)
    if (u < 0 || v >= g.n || u == v)
      throw ParseError("graph has an invalid edge");
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

inline VCGraph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file " + path);
  return parse_graph(in);
}

}  // namespace slotpag
