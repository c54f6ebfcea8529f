#pragma once

#include <stdexcept>
#include <string>

namespace facetab {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// CSV ingestion problems (malformed records, unreadable files).
class IngestError : public Error {
public:
    using Error::Error;
};

// Schema sidecar contradicts the data (missing column, uncovered level, bad kind).
class SchemaError : public Error {
public:
    using Error::Error;
};

// Bad argument to a dataset/layout primitive (e.g. mask length mismatch).
class ArgumentError : public Error {
public:
    using Error::Error;
};

// Unknown or duplicate name (columns, top-level column facets).
class NameError : public Error {
public:
    using Error::Error;
};

// Layout is structurally invalid (no analyses, content before any row split, ...).
class LayoutError : public Error {
public:
    using Error::Error;
};

// Applying a layout to data failed; message carries the row/column path context.
class BuildError : public Error {
public:
    using Error::Error;
};

// A path did not resolve; message lists the deepest prefix and candidates.
class PathError : public Error {
public:
    using Error::Error;
};

// Scoring a child failed during sort_at_path.
class SortError : public Error {
public:
    using Error::Error;
};

// Structural manipulation rejected (row arity mismatch, non-elementary target).
class StructureError : public Error {
public:
    using Error::Error;
};

// Format string could not be parsed; message carries the byte offset.
class FormatParseError : public Error {
public:
    using Error::Error;
};

// A value could not be formatted (arity mismatch with the format's slots).
class FormatError : public Error {
public:
    using Error::Error;
};

// File system failures outside ingestion proper.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace facetab
