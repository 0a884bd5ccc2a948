// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <string>

namespace ltqp::vocab {

inline const std::string kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kXsdNs = "http://www.w3.org/2001/XMLSchema#";
inline const std::string kTreeNs = "https://w3id.org/tree#";
inline const std::string kSarefNs = "https://saref.etsi.org/core/";
inline const std::string kExNs = "http://example.org/";

inline const std::string kRdfType = kRdfNs + "type";

inline const std::string kTreeRelation = kTreeNs + "relation";
inline const std::string kTreeNode = kTreeNs + "node";
inline const std::string kTreePath = kTreeNs + "path";
inline const std::string kTreeValue = kTreeNs + "value";
inline const std::string kTreeGreaterThan = kTreeNs + "GreaterThanRelation";
inline const std::string kTreeGreaterThanOrEqualTo = kTreeNs + "GreaterThanOrEqualToRelation";
inline const std::string kTreeLessThan = kTreeNs + "LessThanRelation";
inline const std::string kTreeLessThanOrEqualTo = kTreeNs + "LessThanOrEqualToRelation";
inline const std::string kTreeEqualTo = kTreeNs + "EqualToRelation";

inline const std::string kXsdDateTime = kXsdNs + "dateTime";
inline const std::string kXsdInteger = kXsdNs + "integer";
inline const std::string kXsdInt = kXsdNs + "int";
inline const std::string kXsdLong = kXsdNs + "long";
inline const std::string kXsdDecimal = kXsdNs + "decimal";
inline const std::string kXsdDouble = kXsdNs + "double";
inline const std::string kXsdFloat = kXsdNs + "float";

inline const std::string kSarefHasTimestamp = kSarefNs + "hasTimestamp";
inline const std::string kSarefHasValue = kSarefNs + "hasValue";
inline const std::string kSarefMeasurementMadeBy = kSarefNs + "measurementMadeBy";

}  // namespace ltqp::vocab
