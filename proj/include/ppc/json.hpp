/*!
  \file json.hpp
  \brief JSON views of reports (nlohmann::json)
*/

#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "apps.hpp"
#include "error_analysis.hpp"
#include "twolevel/cover.hpp"
#include "twolevel/verify.hpp"

namespace ppc
{

inline nlohmann::json to_json( error_stats const& s, std::string const& method )
{
  return { { "pe", to_double( s.pe ) },
           { "me", to_double( s.me ) },
           { "mae", to_double( s.mae ) },
           { "method", method },
           { "exact", { { "pe", to_string( s.pe ) }, { "me", to_string( s.me ) }, { "mae", to_string( s.mae ) } } },
           { "n_pairs", s.n_pairs } };
}

inline nlohmann::json to_json( quality_report const& q )
{
  nlohmann::json j = { { "sse", q.sse },
                       { "n_pixels", q.n_pixels },
                       { "mse", std::to_string( q.mse.numerator() ) + "/" + std::to_string( q.mse.denominator() ) } };
  if ( q.infinite() )
  {
    j["psnr_db"] = "inf";
  }
  else
  {
    j["psnr_db"] = q.psnr_db;
  }
  return j;
}

inline nlohmann::json to_json( minimize_stats const& s )
{
  return { { "literals", s.literals }, { "cubes", s.cubes }, { "iterations", s.iterations }, { "exact", s.exact } };
}

inline nlohmann::json to_json( verification_report const& r, unsigned num_inputs )
{
  nlohmann::json v = nlohmann::json::array();
  for ( auto const& x : r.first_violations )
  {
    v.push_back( { { "row", to_binary( x.minterm, num_inputs ) },
                   { "output", x.output },
                   { "kind", x.what == cover_violation::kind::uncovered_on ? "uncovered_on" : "asserted_off" } } );
  }
  return { { "pass", r.pass }, { "violation_count", r.violation_count }, { "first_violations", v } };
}

inline nlohmann::json to_json( trace_summary const& t )
{
  nlohmann::json sig = nlohmann::json::array(), blk = nlohmann::json::array();
  for ( auto const& s : t.signals )
  {
    sig.push_back( { { "name", s.name },
                     { "wl", s.wl },
                     { "observed", s.observed.to_string() },
                     { "observed_count", s.observed.size() },
                     { "sparsity", s.sparsity },
                     { "cleared_low_bits", s.cleared_low_bits },
                     { "ds_like", s.ds_like } } );
  }
  for ( auto const& b : t.blocks )
  {
    blk.push_back( { { "name", b.name }, { "pair_sparsity", b.pair_sparsity }, { "ds_like_inputs", b.ds_like_inputs } } );
  }
  return { { "signals", sig }, { "blocks", blk } };
}

inline nlohmann::json to_json( std::vector<sweep_row> const& rows )
{
  nlohmann::json a = nlohmann::json::array();
  for ( auto const& r : rows )
  {
    nlohmann::json j = { { "sparsity_spec", r.sparsity_spec },
                         { "literals", r.literals },
                         { "normalized_literals", r.normalized_literals } };
    if ( r.quality.infinite() )
    {
      j["psnr_db"] = "inf";
    }
    else
    {
      j["psnr_db"] = r.quality.psnr_db;
    }
    a.push_back( j );
  }
  return a;
}

inline nlohmann::json to_json( formula_report const& r )
{
  nlohmann::json rows = nlohmann::json::array();
  for ( auto const& x : r.rows )
  {
    rows.push_back( { { "expression", x.name }, { "published", x.published }, { "oracle", x.oracle }, { "agree", x.agree } } );
  }
  return { { "oracle", to_json( r.oracle, "oracle" ) }, { "rows", rows } };
}

} // namespace ppc
