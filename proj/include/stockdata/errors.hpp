#pragma once

#include <stdexcept>
#include <string>

namespace stockdata {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// constituents
struct MalformedHtml : Error { using Error::Error; };
struct ColumnNotFound : Error { using Error::Error; };
struct CsvParseError : Error { using Error::Error; };
struct InvalidSymbol : Error { using Error::Error; };
struct EmptyConstituentList : Error { using Error::Error; };

// timeframe
struct UnknownInterval : Error { using Error::Error; };
struct BadDateFormat : Error { using Error::Error; };
struct InvalidCalendarDate : Error { using Error::Error; };
struct EmptyRange : Error { using Error::Error; };

// market data client
struct TransportError : Error { using Error::Error; };
struct PermanentFetchError : Error { using Error::Error; };
struct RetriesExhausted : Error { using Error::Error; };
struct FixtureMiss : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct EmptyBody : Error { using Error::Error; };
struct DuplicateDate : Error { using Error::Error; };

// dataset sink
struct DirectoryExists : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// CLI
struct UsageError : Error { using Error::Error; };

}  // namespace stockdata
