/*!
  \file pla.hpp
  \brief Berkeley PLA reader and writer (type fd)
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "../errors.hpp"
#include "../truth_table.hpp"
#include "cover.hpp"

namespace ppc
{

/*! \brief Full truth table as PLA text; don't-care rows have '-' in every output. */
inline std::string pla_write( truth_table const& tt )
{
  auto const n = tt.num_inputs(), m = tt.num_outputs();
  if ( n > max_enumeration_inputs )
  {
    throw capacity_error( "PLA tables are limited to " + std::to_string( max_enumeration_inputs ) + " input bits" );
  }
  std::string out = ".i " + std::to_string( n ) + "\n.o " + std::to_string( m ) + "\n.type fd\n.p " +
                    std::to_string( tt.num_rows() ) + "\n";
  out.reserve( out.size() + tt.num_rows() * ( n + m + 2u ) + 3u );
  for ( std::uint64_t mt = 0u; mt < tt.num_rows(); ++mt )
  {
    out += to_binary( mt, n );
    out += ' ';
    if ( auto const r = tt.row( mt ) )
    {
      out += to_binary( *r, m );
    }
    else
    {
      out.append( m, '-' );
    }
    out += '\n';
  }
  out += ".e\n";
  return out;
}

inline std::string pla_write( cover const& c )
{
  std::string out = ".i " + std::to_string( c.num_inputs ) + "\n.o " + std::to_string( c.num_outputs ) +
                    "\n.type fd\n.p " + std::to_string( c.cubes.size() ) + "\n";
  for ( auto const& cb : c.cubes )
  {
    out += cb.to_string( c.num_inputs, c.num_outputs );
    out += '\n';
  }
  out += ".e\n";
  return out;
}

inline void write_text_file( std::string const& path, std::string const& text )
{
  std::ofstream os( path, std::ios::binary );
  if ( !os )
  {
    throw io_error( "cannot open '" + path + "' for writing" );
  }
  os << text;
  if ( !os.flush() )
  {
    throw io_error( "write to '" + path + "' failed" );
  }
}

inline std::string read_text_file( std::string const& path )
{
  std::ifstream is( path, std::ios::binary );
  if ( !is )
  {
    throw io_error( "cannot open '" + path + "'" );
  }
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

/*! \brief One product row: input cube plus raw output characters. */
struct pla_row
{
  cube inputs;         ///< outputs field unused
  std::string outputs; ///< over {0,1,-,~}
  std::size_t line{ 0u };
};

/*! \brief Parsed PLA file. */
struct pla_document
{
  unsigned num_inputs{ 0u };
  unsigned num_outputs{ 0u };
  std::string type{ "fd" };
  std::optional<std::size_t> declared_products;
  std::vector<std::string> input_labels;
  std::vector<std::string> output_labels;
  std::vector<std::string> metadata; ///< unrecognized directives and comments, verbatim
  std::vector<pla_row> rows;

  /*! \brief Cubes of the ON part ('1' participates). Rows without any '1' are dropped. */
  cover to_cover() const
  {
    cover c{ num_inputs, num_outputs, {}, cover_provenance::imported };
    for ( auto const& r : rows )
    {
      auto cb = r.inputs;
      cb.outputs = 0u;
      for ( unsigned k = 0; k < num_outputs; ++k )
      {
        if ( r.outputs[k] == '1' )
        {
          cb.outputs |= std::uint64_t{ 1 } << ( num_outputs - 1u - k );
        }
      }
      if ( cb.outputs != 0u && std::find( c.cubes.begin(), c.cubes.end(), cb ) == c.cubes.end() )
      {
        c.cubes.push_back( cb );
      }
    }
    return c;
  }

  /*! \brief ON set from '1', DC set from '-'; everything else is OFF. */
  multi_output_function to_function() const
  {
    if ( num_inputs > max_enumeration_inputs )
    {
      throw capacity_error( "dense functions are limited to " + std::to_string( max_enumeration_inputs ) + " input bits" );
    }
    multi_output_function f( num_inputs, num_outputs );
    for ( char const wanted : { '-', '1' } )
    {
      for ( auto const& r : rows )
      {
        r.inputs.for_each_minterm( num_inputs, [&]( std::uint64_t mt ) {
          for ( unsigned k = 0; k < num_outputs; ++k )
          {
            if ( r.outputs[k] != wanted )
            {
              continue;
            }
            auto const j = num_outputs - 1u - k;
            if ( wanted == '1' )
            {
              f.set_on( j, mt );
            }
            else if ( !f.is_on( j, mt ) )
            {
              f.set_dc( j, mt );
            }
          }
        } );
      }
    }
    return f;
  }
};

namespace detail
{

inline std::vector<std::string_view> tokens( std::string_view s )
{
  std::vector<std::string_view> out;
  std::size_t i = 0u;
  while ( i < s.size() )
  {
    while ( i < s.size() && ( s[i] == ' ' || s[i] == '\t' || s[i] == '\r' ) )
    {
      ++i;
    }
    auto const start = i;
    while ( i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r' )
    {
      ++i;
    }
    if ( i > start )
    {
      out.push_back( s.substr( start, i - start ) );
    }
  }
  return out;
}

inline unsigned parse_count( std::string_view s, std::size_t line, std::string_view what )
{
  unsigned v = 0u;
  if ( s.empty() || s.size() > 9u )
  {
    throw parse_error( line, "bad " + std::string( what ) + " value '" + std::string( s ) + "'" );
  }
  for ( auto ch : s )
  {
    if ( ch < '0' || ch > '9' )
    {
      throw parse_error( line, "bad " + std::string( what ) + " value '" + std::string( s ) + "'" );
    }
    v = v * 10u + static_cast<unsigned>( ch - '0' );
  }
  return v;
}

} // namespace detail

inline pla_document pla_read( std::string_view text )
{
  pla_document doc;
  bool have_i = false, have_o = false, ended = false;
  std::size_t line_no = 0u;
  std::size_t pos = 0u;

  while ( pos < text.size() )
  {
    auto const eol = text.find( '\n', pos );
    auto line = text.substr( pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos );
    pos = eol == std::string_view::npos ? text.size() : eol + 1u;
    ++line_no;
    if ( !line.empty() && line.back() == '\r' )
    {
      line.remove_suffix( 1u );
    }

    auto const toks = detail::tokens( line );
    if ( toks.empty() )
    {
      continue;
    }
    if ( toks[0].front() == '#' )
    {
      doc.metadata.emplace_back( line );
      continue;
    }
    if ( ended )
    {
      throw parse_error( line_no, "content after .e" );
    }

    if ( toks[0].front() == '.' )
    {
      auto const d = toks[0];
      auto need_arg = [&]() {
        if ( toks.size() != 2u )
        {
          throw parse_error( line_no, std::string( d ) + " expects one argument" );
        }
      };
      if ( d == ".i" || d == ".o" )
      {
        need_arg();
        auto const v = detail::parse_count( toks[1], line_no, d );
        bool& have = d == ".i" ? have_i : have_o;
        unsigned& field = d == ".i" ? doc.num_inputs : doc.num_outputs;
        if ( have && field != v )
        {
          throw parse_error( line_no, "inconsistent " + std::string( d ) + " declaration" );
        }
        if ( !doc.rows.empty() )
        {
          throw parse_error( line_no, std::string( d ) + " after product terms" );
        }
        if ( d == ".i" ? v > max_cube_inputs : ( v == 0u || v > max_cube_outputs ) )
        {
          throw parse_error( line_no, std::string( d ) + " value " + std::to_string( v ) + " is out of range" );
        }
        have = true;
        field = v;
      }
      else if ( d == ".p" )
      {
        need_arg();
        doc.declared_products = detail::parse_count( toks[1], line_no, d );
      }
      else if ( d == ".type" )
      {
        need_arg();
        if ( toks[1] != "f" && toks[1] != "fd" )
        {
          throw parse_error( line_no, "unsupported PLA type '" + std::string( toks[1] ) + "'" );
        }
        doc.type = std::string( toks[1] );
      }
      else if ( d == ".ilb" || d == ".ob" )
      {
        auto& labels = d == ".ilb" ? doc.input_labels : doc.output_labels;
        labels.assign( toks.begin() + 1, toks.end() );
      }
      else if ( d == ".e" || d == ".end" )
      {
        ended = true;
      }
      else
      {
        doc.metadata.emplace_back( line );
      }
      continue;
    }

    // product term
    if ( !have_i || !have_o )
    {
      throw parse_error( line_no, "product term before .i and .o" );
    }
    std::string_view in_part, out_part;
    if ( toks.size() == 2u )
    {
      in_part = toks[0];
      out_part = toks[1];
    }
    else if ( toks.size() == 1u && toks[0].size() == doc.num_inputs + doc.num_outputs )
    {
      in_part = toks[0].substr( 0, doc.num_inputs );
      out_part = toks[0].substr( doc.num_inputs );
    }
    else
    {
      throw parse_error( line_no, "malformed product term '" + std::string( line ) + "'" );
    }
    if ( in_part.size() != doc.num_inputs )
    {
      throw parse_error( line_no, "input part has " + std::to_string( in_part.size() ) + " characters, expected " +
                                      std::to_string( doc.num_inputs ) );
    }
    if ( out_part.size() != doc.num_outputs )
    {
      throw parse_error( line_no, "output part has " + std::to_string( out_part.size() ) + " characters, expected " +
                                      std::to_string( doc.num_outputs ) );
    }
    pla_row r;
    r.line = line_no;
    if ( !cube::parse_inputs( in_part, r.inputs ) )
    {
      throw parse_error( line_no, "bad character in input part '" + std::string( in_part ) + "'" );
    }
    for ( auto ch : out_part )
    {
      if ( ch != '0' && ch != '1' && ch != '-' && ch != '~' && ch != '2' )
      {
        throw parse_error( line_no, "bad character in output part '" + std::string( out_part ) + "'" );
      }
    }
    r.outputs = std::string( out_part );
    std::replace( r.outputs.begin(), r.outputs.end(), '2', '-' );
    doc.rows.push_back( std::move( r ) );
  }

  if ( !have_i || !have_o )
  {
    throw parse_error( line_no, "missing .i or .o declaration" );
  }
  if ( doc.declared_products && *doc.declared_products != doc.rows.size() )
  {
    throw parse_error( line_no, ".p declares " + std::to_string( *doc.declared_products ) + " product terms but " +
                                    std::to_string( doc.rows.size() ) + " were read" );
  }
  if ( !doc.input_labels.empty() && doc.input_labels.size() != doc.num_inputs )
  {
    throw parse_error( 0u, ".ilb lists " + std::to_string( doc.input_labels.size() ) + " labels for " +
                               std::to_string( doc.num_inputs ) + " inputs" );
  }
  if ( !doc.output_labels.empty() && doc.output_labels.size() != doc.num_outputs )
  {
    throw parse_error( 0u, ".ob lists " + std::to_string( doc.output_labels.size() ) + " labels for " +
                               std::to_string( doc.num_outputs ) + " outputs" );
  }
  return doc;
}

inline pla_document pla_read_file( std::string const& path )
{
  return pla_read( read_text_file( path ) );
}

} // namespace ppc
