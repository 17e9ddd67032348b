// ingest.hpp -- dataset manifests and transcript files (CHAT subset and
// plain text) parsed into normalized Transcript records.

#ifndef CTFEAT_INGEST_HPP
#define CTFEAT_INGEST_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ctfeat {

enum class Label { HC, AD, Unknown };

std::string label_to_string(Label l);
Label label_from_string(const std::string& s);  // case-insensitive, "" = Unknown

struct ManifestEntry {
  std::string subject_id;
  Label label = Label::Unknown;
  std::string transcript_path;
  std::optional<std::string> asr_transcript_path;
  std::optional<std::string> parse_trees_path;
};

enum class RawSource { CHAT, Plain };

/// One subject's normalized participant speech. `fillers_marked` holds
/// indices into the token stream of tokenize(joined utterances) for words
/// that carried a CHAT filler code.
struct Transcript {
  std::string subject_id;
  std::vector<std::string> utterances;
  std::vector<size_t> fillers_marked;
  RawSource raw_source = RawSource::Plain;

  std::string joined() const;  // utterances joined with single spaces
};

struct ChatOptions {
  std::string participant_tier = "*PAR";
  // Legacy "&word" forms (no dash) are kept as fillers when the word is in
  // this list, otherwise dropped as fragments.
  std::vector<std::string> filler_words = {"uh", "um", "er", "eh",  "ah",
                                           "hm", "hmm", "mm", "mhm", "uhm"};
};

/// Parse a CHAT (.cha) file: keeps participant-tier main lines only, strips
/// timestamps, bracket codes and event codes, converts filler codes to bare
/// tokens. Throws "empty participant speech" when nothing remains.
Transcript parse_chat(const std::string& text, const std::string& subject_id,
                      const ChatOptions& options = {});

/// One utterance per non-empty line; throws on all-whitespace input.
Transcript parse_plain(const std::string& text, const std::string& subject_id);

/// Load a manifest CSV with header subject_id,label,transcript,asr,trees.
/// Relative paths resolve against the manifest's directory; every referenced
/// file must exist. Entries come back in file order.
std::vector<ManifestEntry> load_manifest(const std::string& path);

/// Dispatch on file extension: ".cha" parses as CHAT, anything else as
/// plain text.
Transcript load_transcript(const std::string& path,
                           const std::string& subject_id,
                           const ChatOptions& options = {});

}  // namespace ctfeat

#endif
