/*!
  \file errors.hpp
  \brief Exception types shared by all ppc modules
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppc
{

/*! \brief Base class of every domain error raised by the library. */
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Invalid parameter (non-power-of-two DS step, mismatched word lengths, ...). */
class parameter_error : public error
{
public:
  using error::error;
};

/*! \brief Problem exceeds an enumeration or exactness guard. */
class capacity_error : public error
{
public:
  using error::error;
};

class unsupported_preprocessing_error : public parameter_error
{
public:
  using parameter_error::parameter_error;
};

/*! \brief Input value outside its declared domain or natural range. */
class range_error : public error
{
public:
  using error::error;
};

class arithmetic_error : public error
{
public:
  using error::error;
};

class data_error : public error
{
public:
  using error::error;
};

class io_error : public error
{
public:
  using error::error;
};

/*! \brief Malformed text input; carries the 1-based line number (0 when unknown). */
class parse_error : public error
{
public:
  parse_error( std::size_t line, std::string const& what )
      : error( line == 0u ? what : "line " + std::to_string( line ) + ": " + what ),
        line_( line )
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace ppc
