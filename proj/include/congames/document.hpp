#ifndef CONGAMES_DOCUMENT_HPP
#define CONGAMES_DOCUMENT_HPP

#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "congames/dsl.hpp"
#include "congames/game.hpp"
#include "congames/quantum.hpp"
#include "congames/strategy.hpp"
#include "congames/symmetry.hpp"

namespace congames {

using Json = nlohmann::ordered_json;

// Load failure located by a JSON pointer into the document. `kind` is "io",
// "schema" or "validation".
class DocumentError : public InputError {
 public:
  DocumentError(std::string kind, std::string pointer, const std::string& message, Report violations = {})
      : InputError((pointer.empty() ? std::string("/") : pointer) + ": " + message),
        kind_(std::move(kind)),
        pointer_(std::move(pointer)),
        message_(message),
        violations_(std::move(violations)) {}
  const std::string& kind() const { return kind_; }
  const std::string& pointer() const { return pointer_; }
  const std::string& message() const { return message_; }
  const Report& violations() const { return violations_; }

 private:
  std::string kind_;
  std::string pointer_;
  std::string message_;
  Report violations_;
};

struct PortRef {
  std::string name;
  std::string game;  // type expression over the document's games
  bool input = false;
  bool operator==(const PortRef&) const = default;
};

struct StrategyDef {
  std::optional<std::string> game;  // type expression; otherwise `ports`
  std::vector<PortRef> ports;
  std::optional<std::string> valuation;  // key into Document::valuations
  Strategy value;
};

struct ValuationDef {
  std::string strategy;
  ConfigTable table;  // extensional, over the strategy's configurations
};

struct MapDef {
  std::string source;  // game names
  std::string target;
  EsMap map;
};

struct QuantumDef {
  std::optional<std::string> game;  // structure taken from a game, else inline
  QuantumES value;
};

struct SymmetryDef {
  std::string game;      // exactly one of game / strategy names the subject
  std::string strategy;  // (the strategy's inner structure)
  IsoFamily family;
};

struct Document {
  std::map<std::string, Game> games;
  std::optional<LevelOrder> levels;
  std::map<std::string, StrategyDef> strategies;
  std::map<std::string, ValuationDef> valuations;
  std::map<std::string, MapDef> maps;
  std::map<std::string, QuantumDef> quantum;
  std::map<std::string, SymmetryDef> symmetries;

  // Lookups throw InputError naming the missing entry.
  const Game& game(const std::string& name) const;
  const Strategy& strategy(const std::string& name) const;
  const ValuationDef& valuation(const std::string& name) const;
  const MapDef& map(const std::string& name) const;
  const QuantumDef& qes(const std::string& name) const;
  const SymmetryDef& symmetry(const std::string& name) const;

  // Games and maps as a DSL environment.
  dsl::Env env() const;
};

bool operator==(const Document& a, const Document& b);

// Parses and validates. Structures, maps, strategies and level orders are
// checked eagerly; valuations, quantum blocks and symmetry families are only
// checked for shape (their semantic checks are commands of their own).
Document parse_document(const Json& j);
Document load_document(const std::string& path);

// Canonical form: valuations are written extensionally.
Json to_json(const Document& d);
void save_document(const Document& d, const std::string& path);

// JSON pointer escaping of one reference token.
std::string pointer_token(const std::string& s);

}  // namespace congames

#endif  // CONGAMES_DOCUMENT_HPP
