#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "quiverks/field.hpp"
#include "quiverks/pairing.hpp"
#include "quiverks/quiver.hpp"
#include "quiverks/rep.hpp"

namespace qks {

inline constexpr std::string_view kSchemaVersion = "1";

using DocumentBody = std::variant<Representation<PrimeField>, Representation<RationalField>, Pairing<PrimeField>,
                                  Pairing<RationalField>>;

/// One input file: a representation (optionally with realization and
/// relations) or a pairing. Presence flags keep round trips byte-exact.
struct Document {
  std::string schema_version{kSchemaVersion};
  DocumentBody body;
  bool has_realization = false;
  std::optional<PathRelations> relations;

  bool is_pairing() const noexcept { return body.index() >= 2; }
  FieldSpec field() const;
};

/// Parses JSON text. Unknown or missing keys and malformed values throw
/// SchemaError with a "$.path" location (line/column for syntax errors);
/// arrow maps of the wrong shape throw ShapeError naming the arrow.
Document parse_document(std::string_view text);

/// Canonical form: sorted keys, no whitespace, every number a string.
std::string serialize_document(const Document& doc);

Document read_document_file(const std::string& path);

/// Endomorphism file: {"components": {vertex: matrix}, "schema_version": "1"}.
template <ExactField K>
Morphism<K> parse_morphism(std::string_view text, const Representation<K>& rep);

template <ExactField K>
std::string serialize_morphism(const Morphism<K>& m, const Representation<K>& rep);

std::string read_text_file(const std::string& path);

}  // namespace qks
