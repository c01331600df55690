#pragma once

#include <string>

#include <json.hpp>

#include "ncp/category.hpp"
#include "ncp/complex.hpp"
#include "ncp/matrix.hpp"
#include "ncp/partition.hpp"
#include "ncp/verify.hpp"

namespace ncp {

using Json = nlohmann::ordered_json;

/// Parses "(1)(2 3)". When n <= 9 a group without spaces such as "(23)" is
/// read digit by digit. Throws ParseError on malformed text and UsageError
/// when the blocks are not a noncrossing partition of 1..n.
Partition parse_partition(const std::string& text, int n);

/// Accepts either the text form or the JSON form {"n":..,"blocks":[..]}.
Partition read_partition(const std::string& text, int n);

Json to_json(const Partition& p);
Partition partition_from_json(const Json& j);

/// {"source":..,"target":..,"edges":[{"from":child,"to":parent},..]}
Json to_json(const ClusterMorphism& m);
/// Validates the morphism; throws ParseError on schema errors and
/// UsageError when the edges are not a morphism.
ClusterMorphism morphism_from_json(const Json& j);

/// {"n":..,"rows":[[..],..]}
Json to_json(const UnipotentMatrix& m);
UnipotentMatrix matrix_from_json(const Json& j);
/// Whitespace separated rows, one per line.
UnipotentMatrix parse_matrix(const std::string& text);

/// Parses JSON text, or the contents of the file it names.
Json read_json(const std::string& text_or_path);

/// Grammar:
///   text      := "generators:" labels "\n" "relators:" "\n" (word "\n")*
///   labels    := label ("," label)*        label := "x_" i "_" j
///   word      := letter (" " letter)*      letter := label ["^-1"]
std::string presentation_text(const GroupPresentation& p);
Json to_json(const GroupPresentation& p);

Json to_json(const SimplicialComplex& k);
std::string to_dot(const SimplicialComplex& k, const std::string& name);

/// Cover relation of the refinement order, coarse on top.
std::string hasse_dot(int n);
Json hasse_json(int n);

Json to_json(const SuiteResult& r);

}  // namespace ncp
