#include "ctfeat/parsetree.hpp"

#include <stdexcept>

#include "ctfeat/io.hpp"

namespace ctfeat {

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw std::runtime_error("tree parse error at offset " +
                             std::to_string(pos) + ": " + why);
  }

  // Returns the depth of the node starting at pos.
  int node() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    if (s[pos] != '(') {
      // leaf token
      size_t start = pos;
      while (pos < s.size() && s[pos] != '(' && s[pos] != ')' &&
             s[pos] != ' ' && s[pos] != '\t')
        ++pos;
      if (pos == start) fail("expected token");
      return 0;
    }
    ++pos;  // '('
    skip_ws();
    size_t lab_start = pos;
    while (pos < s.size() && s[pos] != '(' && s[pos] != ')' && s[pos] != ' ' &&
           s[pos] != '\t')
      ++pos;
    std::string lab = s.substr(lab_start, pos - lab_start);
    int max_child = -1;
    while (true) {
      skip_ws();
      if (pos >= s.size()) fail("missing ')'");
      if (s[pos] == ')') {
        ++pos;
        break;
      }
      int d = node();
      if (d > max_child) max_child = d;
    }
    if (max_child < 0) fail("empty node" + (lab.empty() ? "" : " (" + lab + ")"));
    return 1 + max_child;
  }
};

}  // namespace

int tree_depth(const std::string& tree) {
  Parser p{tree};
  p.skip_ws();
  if (p.pos >= tree.size() || tree[p.pos] != '(')
    p.fail("tree must start with '('");
  int d = p.node();
  p.skip_ws();
  if (p.pos != tree.size()) p.fail("trailing content after tree");
  return d;
}

double avg_parse_depth(const std::vector<std::string>& trees) {
  if (trees.empty()) return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < trees.size(); ++i) {
    try {
      sum += tree_depth(trees[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error("utterance " + std::to_string(i) + ": " +
                               e.what());
    }
  }
  return sum / static_cast<double>(trees.size());
}

std::vector<std::string> load_trees_file(const std::string& path) {
  std::vector<std::string> trees;
  for (const auto& line : split_lines(read_file(path))) {
    std::string t = trim(line);
    if (!t.empty()) trees.push_back(t);
  }
  return trees;
}

}  // namespace ctfeat
