/*!
  \file verify.hpp
  \brief Exhaustive check of a cover against an incompletely specified function
*/

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cover.hpp"

namespace ppc
{

inline constexpr unsigned max_verify_inputs = 22u;

struct cover_violation
{
  enum class kind
  {
    uncovered_on, ///< output is 1 but no participating cube covers the minterm
    asserted_off  ///< a participating cube covers a minterm where the output is 0
  };

  std::uint64_t minterm;
  unsigned output;
  kind what;
};

struct verification_report
{
  bool pass{ true };
  std::uint64_t violation_count{ 0u };
  std::vector<cover_violation> first_violations; ///< at most 10

  std::string to_string( unsigned num_inputs ) const
  {
    if ( pass )
    {
      return "pass";
    }
    std::string s = "fail: " + std::to_string( violation_count ) + " violation(s)";
    for ( auto const& v : first_violations )
    {
      s += "\n  row " + to_binary( v.minterm, num_inputs ) + " output " + std::to_string( v.output ) +
           ( v.what == cover_violation::kind::uncovered_on ? ": ON minterm not covered" : ": OFF minterm asserted" );
    }
    return s;
  }
};

inline verification_report verify_cover( cover const& c, multi_output_function const& f )
{
  if ( c.num_inputs != f.num_inputs() || c.num_outputs != f.num_outputs() )
  {
    throw parameter_error( "cover dimensions (" + std::to_string( c.num_inputs ) + "," + std::to_string( c.num_outputs ) +
                           ") do not match the function (" + std::to_string( f.num_inputs() ) + "," +
                           std::to_string( f.num_outputs() ) + ")" );
  }
  if ( f.num_inputs() > max_verify_inputs )
  {
    throw capacity_error( "verification is limited to " + std::to_string( max_verify_inputs ) + " input bits" );
  }

  verification_report report;
  auto record = [&]( std::uint64_t mt, unsigned j, cover_violation::kind k ) {
    report.pass = false;
    ++report.violation_count;
    if ( report.first_violations.size() < 10u )
    {
      report.first_violations.push_back( { mt, j, k } );
    }
  };

  std::vector<multi_output_function::bitset> covered( f.num_outputs(),
                                                      multi_output_function::bitset( f.num_minterms() ) );
  for ( auto const& cb : c.cubes )
  {
    cb.for_each_minterm( f.num_inputs(), [&]( std::uint64_t mt ) {
      for ( unsigned j = 0; j < f.num_outputs(); ++j )
      {
        if ( ( cb.outputs >> j ) & 1u )
        {
          covered[j].set( mt );
        }
      }
    } );
  }

  for ( std::uint64_t mt = 0u; mt < f.num_minterms(); ++mt )
  {
    for ( unsigned j = 0; j < f.num_outputs(); ++j )
    {
      if ( f.is_on( j, mt ) && !covered[j].test( mt ) )
      {
        record( mt, j, cover_violation::kind::uncovered_on );
      }
      else if ( covered[j].test( mt ) && f.is_off( j, mt ) )
      {
        record( mt, j, cover_violation::kind::asserted_off );
      }
    }
  }
  return report;
}

inline verification_report verify_cover( cover const& c, truth_table const& tt )
{
  if ( tt.num_inputs() > max_verify_inputs )
  {
    throw capacity_error( "verification is limited to " + std::to_string( max_verify_inputs ) + " input bits" );
  }
  return verify_cover( c, multi_output_function::from_truth_table( tt ) );
}

} // namespace ppc
