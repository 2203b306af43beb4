#pragma once

#include <string>
#include <string_view>

#include "addcomb/conv.hpp"
#include "addcomb/forge.hpp"
#include "addcomb/group.hpp"
#include "addcomb/opmethod.hpp"

namespace addcomb {

// {"kind": "integers"} or {"kind": "residues", "modulus": m}.
std::string ctx_to_json(const GroupCtx& ctx);

// {"group": <ctx>, "elements": [...]}. The reader canonicalizes order and
// duplicates but rejects residues outside [0, m) with the offending index.
std::string set_to_json(const GSet& s);
GSet set_from_json(std::string_view text);

// {"ctx": <ctx>, "values": [[x, v], ...]}; values past 2^64 are strings.
std::string countfn_to_json(const CountFn& f);
CountFn countfn_from_json(std::string_view text);

std::string spec_to_json(const FamilySpec& spec);
FamilySpec spec_from_json(std::string_view text);

// {"index": [...], "entries": [[...], ...]}.
std::string matrix_to_json(const SymMat& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace addcomb
