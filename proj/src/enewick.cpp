#include "phylo/enewick.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace phylo {

namespace {

[[noreturn]] void syntax_error(std::size_t pos, const std::string& what) {
  fail(ErrorCode::SyntaxError, what + " at offset " + std::to_string(pos));
}

bool name_char(char c) {
  switch (c) {
    case '(': case ')': case ',': case ';': case ':': case '#':
    case ' ': case '\t': case '\r': case '\n':
      return false;
    default:
      return true;
  }
}

// One syntactic occurrence; occurrences sharing a hybrid tag merge into a
// single node afterwards.
struct Occurrence {
  std::vector<int> kids;
  std::string name;
  std::string tag;
  bool has_kids = false;
  std::size_t pos = 0;
};

class EnewickParser {
 public:
  explicit EnewickParser(std::string_view text) : text_(text) {}

  Network run() {
    int root_occ = parse_document();
    return build(root_occ);
  }

 private:
  std::string_view text_;
  std::size_t i_ = 0;
  std::vector<Occurrence> occs_;

  void skip_ws() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_])))
      ++i_;
  }

  char peek() const { return i_ < text_.size() ? text_[i_] : '\0'; }

  std::string take_name() {
    std::size_t start = i_;
    while (i_ < text_.size() && name_char(text_[i_])) ++i_;
    return std::string(text_.substr(start, i_ - start));
  }

  std::string take_tag() {
    // caller consumed '#'
    if (peek() != 'H') syntax_error(i_, "expected 'H' after '#'");
    ++i_;
    std::size_t start = i_;
    while (i_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_'))
      ++i_;
    if (i_ == start) syntax_error(i_, "empty hybrid tag");
    return std::string(text_.substr(start, i_ - start));
  }

  int finish_node(std::vector<int> kids, bool has_kids) {
    std::size_t pos = i_;
    std::string name = take_name();
    std::string tag;
    if (peek() == '#') {
      ++i_;
      tag = take_tag();
    }
    if (!has_kids && name.empty() && tag.empty())
      syntax_error(pos, "expected a node");
    if (peek() == ':') syntax_error(i_, "branch lengths are not supported");
    Occurrence occ;
    occ.kids = std::move(kids);
    occ.has_kids = has_kids;
    occ.name = std::move(name);
    occ.tag = std::move(tag);
    occ.pos = pos;
    occs_.push_back(std::move(occ));
    return static_cast<int>(occs_.size()) - 1;
  }

  int parse_document() {
    std::vector<std::vector<int>> frames;
    int completed = -1;
    skip_ws();
    for (;;) {
      // expect a subtree
      while (peek() == '(') {
        frames.emplace_back();
        ++i_;
        skip_ws();
      }
      completed = finish_node({}, false);
      // attach completed nodes until we need another subtree
      for (;;) {
        skip_ws();
        char c = peek();
        if (c == ',') {
          if (frames.empty()) syntax_error(i_, "',' outside parentheses");
          frames.back().push_back(completed);
          ++i_;
          skip_ws();
          break;  // next subtree
        } else if (c == ')') {
          if (frames.empty()) syntax_error(i_, "unbalanced ')'");
          frames.back().push_back(completed);
          ++i_;
          completed = finish_node(std::move(frames.back()), true);
          frames.pop_back();
        } else if (c == ';') {
          if (!frames.empty()) syntax_error(i_, "unbalanced '(' before ';'");
          ++i_;
          skip_ws();
          if (i_ != text_.size()) syntax_error(i_, "trailing text after ';'");
          return completed;
        } else if (c == '\0') {
          syntax_error(i_, "unexpected end of input (missing ';')");
        } else {
          syntax_error(i_, std::string("unexpected character '") + c + "'");
        }
      }
    }
  }

  Network build(int root_occ) {
    // Merge hybrid occurrences tag by tag; first occurrence fixes the id.
    const int m = static_cast<int>(occs_.size());
    std::vector<NodeId> node_of(m, kNoNode);
    std::map<std::string, NodeId> tag_node;
    std::map<std::string, int> tag_count;
    std::map<std::string, std::size_t> tag_pos;

    std::vector<std::string> names, labels;
    std::vector<bool> node_has_kids;
    std::vector<std::string> node_name;  // agreed hybrid name or plain name

    auto new_node = [&]() {
      names.emplace_back();
      labels.emplace_back();
      node_has_kids.push_back(false);
      node_name.emplace_back();
      return static_cast<NodeId>(names.size()) - 1;
    };

    for (int o = 0; o < m; ++o) {
      Occurrence& occ = occs_[o];
      NodeId v;
      if (occ.tag.empty()) {
        v = new_node();
      } else {
        auto it = tag_node.find(occ.tag);
        if (it == tag_node.end()) {
          v = new_node();
          tag_node.emplace(occ.tag, v);
          tag_pos.emplace(occ.tag, occ.pos);
        } else {
          v = it->second;
        }
        ++tag_count[occ.tag];
        if (occ.has_kids) {
          if (node_has_kids[v])
            syntax_error(occ.pos, "hybrid tag #H" + occ.tag + " defined twice");
          node_has_kids[v] = true;
        }
        if (!occ.name.empty()) {
          if (!node_name[v].empty() && node_name[v] != occ.name)
            syntax_error(occ.pos, "hybrid tag #H" + occ.tag +
                                      " carries conflicting names");
          node_name[v] = occ.name;
        }
      }
      node_of[o] = v;
      if (occ.tag.empty()) {
        node_has_kids[v] = occ.has_kids;
        node_name[v] = occ.name;
      }
    }

    for (auto& [tag, count] : tag_count)
      if (count < 2)
        syntax_error(tag_pos[tag], "hybrid tag #H" + tag + " appears only once");

    std::vector<Edge> edges;
    for (int o = 0; o < m; ++o)
      for (int kid : occs_[o].kids)
        edges.push_back({node_of[o], node_of[kid]});

    // Leaf labels; hybrids defined by a bare label get a fresh leaf child.
    std::vector<std::pair<NodeId, std::string>> pending_leaves;
    for (auto& [tag, v] : tag_node) {
      if (!node_has_kids[v]) {
        if (node_name[v].empty())
          fail(ErrorCode::UnknownHybridReference, "hybrid tag #H" + tag +
                                                      " is never defined");
        pending_leaves.emplace_back(v, node_name[v]);
        node_name[v] = "#H" + tag;
        node_has_kids[v] = true;
      } else if (node_name[v].empty()) {
        node_name[v] = "#H" + tag;
      }
    }
    for (auto& [parent, taxon] : pending_leaves) {
      NodeId leaf = new_node();
      node_name[leaf] = taxon;
      edges.push_back({parent, leaf});
      node_has_kids[leaf] = false;
    }

    const NodeId n = static_cast<NodeId>(names.size());
    int anon = 0;
    for (NodeId v = 0; v < n; ++v) {
      if (!node_has_kids[v]) {
        labels[v] = node_name[v];  // sink: name is the taxon
        names[v] = node_name[v];
      } else if (node_name[v].empty()) {
        names[v] = "node" + std::to_string(anon++);
      } else {
        names[v] = node_name[v];
      }
    }
    (void)root_occ;
    return Network::from_parts(std::move(names), std::move(labels), std::move(edges));
  }
};

// ---- canonical writer ----

struct WriterPrep {
  std::vector<const std::string*> min_taxon;
  std::vector<std::vector<NodeId>> ordered_children;
};

WriterPrep prepare_writer(const Network& net) {
  static const std::string kEmpty;
  WriterPrep prep;
  const NodeId n = net.node_count();
  prep.min_taxon.assign(n, &kEmpty);
  const auto& topo = net.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    NodeId v = *it;
    if (net.is_leaf(v)) {
      prep.min_taxon[v] = &net.label(v);
      continue;
    }
    const std::string* best = nullptr;
    for (NodeId c : net.children(v))
      if (best == nullptr || *prep.min_taxon[c] < *best) best = prep.min_taxon[c];
    prep.min_taxon[v] = best;
  }
  prep.ordered_children.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    auto kids = net.children(v);
    prep.ordered_children[v].assign(kids.begin(), kids.end());
    std::sort(prep.ordered_children[v].begin(), prep.ordered_children[v].end(),
              [&](NodeId a, NodeId b) {
                if (*prep.min_taxon[a] != *prep.min_taxon[b])
                  return *prep.min_taxon[a] < *prep.min_taxon[b];
                return a < b;
              });
  }
  return prep;
}

void check_writable_label(const std::string& label) {
  for (char c : label)
    if (!name_char(c))
      fail(ErrorCode::SyntaxError,
           "taxon '" + label + "' contains a character reserved by the format");
}

}  // namespace

Network parse_enewick(std::string_view text) {
  return EnewickParser(text).run();
}

std::string write_enewick(const Network& net) {
  for (const std::string& taxon : net.taxa()) check_writable_label(taxon);
  WriterPrep prep = prepare_writer(net);

  std::string out;
  std::vector<int> tag(net.node_count(), 0);
  int next_tag = 1;

  struct Frame {
    NodeId v;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;

  auto enter = [&](NodeId v) {
    if (net.kind(v) == NodeKind::Reticulate) {
      if (tag[v] != 0) {  // reference to an already expanded reticulation
        out += "#H" + std::to_string(tag[v]);
        return;
      }
      tag[v] = next_tag++;
    }
    if (net.is_leaf(v)) {
      out += net.label(v);
      return;
    }
    out += '(';
    stack.push_back({v});
  };

  enter(net.root());
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& kids = prep.ordered_children[f.v];
    if (f.next < kids.size()) {
      if (f.next > 0) out += ',';
      NodeId c = kids[f.next++];
      enter(c);
    } else {
      out += ')';
      if (net.kind(f.v) == NodeKind::Reticulate)
        out += "#H" + std::to_string(tag[f.v]);
      stack.pop_back();
    }
  }
  out += ";\n";
  return out;
}

Network parse_edge_list(std::string_view text) {
  RawDigraph raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::vector<std::pair<std::string, std::string>> edge_names;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (line[first] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos)
      fail(ErrorCode::SyntaxError,
           "line " + std::to_string(line_no) + ": expected parent<TAB>child");
    std::string_view parent = line.substr(0, tab);
    std::string_view child = line.substr(tab + 1);
    if (!child.empty() && child.find('\t') != std::string_view::npos)
      fail(ErrorCode::SyntaxError,
           "line " + std::to_string(line_no) + ": more than two fields");
    if (parent.empty() || child.empty())
      fail(ErrorCode::SyntaxError,
           "line " + std::to_string(line_no) + ": empty node name");
    raw.add_edge(parent, child);
    edge_names.emplace_back(parent, child);
  }

  // Sinks are leaves; their names are the taxa.
  std::map<std::string, bool> has_out;
  for (auto& [p, c] : edge_names) {
    has_out[p] = true;
    has_out.try_emplace(c, false);
  }
  for (auto& [name, out] : has_out)
    if (!out) raw.set_label(name, name);
  return Network::validate(raw);
}

std::string export_dot(const Network& net, const Decomposition* decomp,
                       const std::vector<int>* colors) {
  std::ostringstream os;
  os << "digraph phylo {\n  rankdir=TB;\n  node [shape=ellipse, fontsize=10];\n";

  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };

  auto emit_node = [&](std::ostream& o, NodeId v) {
    o << "    n" << v << " [label=" << quote(net.is_leaf(v) ? net.label(v)
                                                            : net.name(v));
    switch (net.kind(v)) {
      case NodeKind::Reticulate:
        o << ", shape=box, style=filled, fillcolor=gray25, fontcolor=white";
        break;
      case NodeKind::Leaf:
        o << ", shape=circle, style=diagonals";
        break;
      case NodeKind::Redundant:
        o << ", shape=ellipse, style=dashed";
        break;
      case NodeKind::Tree:
        break;
    }
    if (colors != nullptr && v < static_cast<NodeId>(colors->size())) {
      switch ((*colors)[v]) {
        case 0: o << ", style=filled, fillcolor=salmon"; break;
        case 1: o << ", style=filled, fillcolor=lightblue"; break;
        case 2: o << ", style=filled, fillcolor=plum"; break;
        default: break;
      }
    }
    o << "];\n";
  };

  if (decomp != nullptr) {
    for (int comp = 0; comp < decomp->component_count(); ++comp) {
      bool tree = decomp->kinds[comp] == Decomposition::ComponentKind::TreeNode;
      os << "  subgraph cluster_" << comp << " {\n    label=\""
         << (tree ? "tau" : "sigma") << comp << "\";\n    style="
         << (tree ? "filled" : "dashed") << ";\n"
         << (tree ? "    fillcolor=gray92;\n" : "");
      for (NodeId v : decomp->members(comp)) emit_node(os, v);
      os << "  }\n";
    }
    for (NodeId v = 0; v < net.node_count(); ++v)
      if (decomp->component_of[v] == Decomposition::kNone) emit_node(os, v);
  } else {
    for (NodeId v = 0; v < net.node_count(); ++v) emit_node(os, v);
  }

  for (NodeId v = 0; v < net.node_count(); ++v)
    for (NodeId c : net.children(v)) os << "  n" << v << " -> n" << c << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace phylo
