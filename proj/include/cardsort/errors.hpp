#pragma once

#include <stdexcept>
#include <string>

namespace cardsort {

// Base of everything the library throws. InputError maps to CLI exit code 2,
// NumericError to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

// text_pipeline
struct MissingLemmatizer : InputError { using InputError::InputError; };

// vector_models
struct EmptyCorpus : InputError { using InputError::InputError; };
struct UnknownGram : InputError { using InputError::InputError; };
struct EmptyDocument : InputError { using InputError::InputError; };
struct InvalidDimension : InputError { using InputError::InputError; };
struct NumericalFailure : NumericError { using NumericError::NumericError; };

// wordnet
struct MissingFile : InputError { using InputError::InputError; };
struct MalformedDatabase : InputError { using InputError::InputError; };
struct UnknownSynset : InputError { using InputError::InputError; };
struct EmptySentence : InputError { using InputError::InputError; };

// cardsort_data
struct MissingAssignment : InputError { using InputError::InputError; };
struct DuplicateAssignment : InputError { using InputError::InputError; };
struct UnknownItem : InputError { using InputError::InputError; };
struct DegenerateColumn : InputError { using InputError::InputError; };

// correlation
struct LengthMismatch : InputError { using InputError::InputError; };
struct TooSmall : InputError { using InputError::InputError; };
struct ConstantInput : NumericError { using NumericError::NumericError; };

// montecarlo
struct InvalidGroupCount : InputError { using InputError::InputError; };
struct InvalidK : InputError { using InputError::InputError; };
struct DimensionMismatch : InputError { using InputError::InputError; };
struct SingleCluster : InputError { using InputError::InputError; };

}  // namespace cardsort
