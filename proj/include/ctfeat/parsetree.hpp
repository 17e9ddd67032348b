// parsetree.hpp -- depth of Penn-style bracketed constituency trees.

#ifndef CTFEAT_PARSETREE_HPP
#define CTFEAT_PARSETREE_HPP

#include <string>
#include <vector>

namespace ctfeat {

/// Depth of one bracketed tree "(LABEL child ...)": leaves are bare tokens
/// at depth 0, an internal node is 1 + max over children. Throws on
/// unbalanced parentheses or childless nodes.
int tree_depth(const std::string& tree);

/// Arithmetic mean of tree_depth over the utterance trees; 0.0 for an
/// empty list. Parse errors name the offending utterance index.
double avg_parse_depth(const std::vector<std::string>& trees);

/// One tree per non-empty line.
std::vector<std::string> load_trees_file(const std::string& path);

}  // namespace ctfeat

#endif
