// ppcflow: command-line front end of the partially-precise block design flow.
// Exit status: 0 success, 1 domain error, 2 usage error.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <ppc/ppc.hpp>

namespace
{

using namespace ppc;

struct usage_error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/*! `a=...,b=...` or `both=...` into per-operand strings */
std::pair<std::string, std::string> split_operands( std::string const& text, std::string const& flag )
{
  std::string a, b;
  if ( text.empty() )
  {
    return { a, b };
  }
  std::size_t pos = 0u;
  while ( pos <= text.size() )
  {
    auto const comma = text.find( ',', pos );
    auto const item = text.substr( pos, comma == std::string::npos ? std::string::npos : comma - pos );
    pos = comma == std::string::npos ? text.size() + 1u : comma + 1u;
    auto const eq = item.find( '=' );
    if ( eq == std::string::npos )
    {
      throw usage_error( flag + ": expected a=..., b=... or both=..., got '" + item + "'" );
    }
    auto const key = item.substr( 0, eq ), val = item.substr( eq + 1u );
    if ( key == "a" )
      a = val;
    else if ( key == "b" )
      b = val;
    else if ( key == "both" )
      a = b = val;
    else
      throw usage_error( flag + ": unknown operand '" + key + "'" );
  }
  return { a, b };
}

std::vector<unsigned> parse_list( std::string const& text, std::string const& flag )
{
  std::vector<unsigned> out;
  std::size_t pos = 0u;
  while ( pos <= text.size() )
  {
    auto const comma = text.find( ',', pos );
    auto const item = text.substr( pos, comma == std::string::npos ? std::string::npos : comma - pos );
    pos = comma == std::string::npos ? text.size() + 1u : comma + 1u;
    try
    {
      std::size_t used = 0u;
      auto const v = std::stol( item, &used );
      if ( used != item.size() || v < 0 )
      {
        throw usage_error( "" );
      }
      out.push_back( static_cast<unsigned>( v ) );
    }
    catch ( std::exception const& )
    {
      throw usage_error( flag + ": bad number '" + item + "'" );
    }
  }
  return out;
}

std::vector<std::int64_t> parse_values( std::string const& text, std::string const& flag )
{
  std::vector<std::int64_t> out;
  if ( text.empty() )
  {
    return out;
  }
  std::size_t pos = 0u;
  while ( pos <= text.size() )
  {
    auto const comma = text.find( ',', pos );
    auto const item = text.substr( pos, comma == std::string::npos ? std::string::npos : comma - pos );
    pos = comma == std::string::npos ? text.size() + 1u : comma + 1u;
    try
    {
      std::size_t used = 0u;
      out.push_back( std::stoll( item, &used ) );
      if ( used != item.size() )
      {
        throw usage_error( "" );
      }
    }
    catch ( std::exception const& )
    {
      throw usage_error( flag + ": bad number '" + item + "'" );
    }
  }
  return out;
}

/*! block description flags shared by several subcommands */
struct block_flags
{
  std::string op{ "mul" };
  std::string wl{ "4" };
  std::string interp{ "" };
  unsigned keep_high{ 0u };
  std::string pre;
  std::string natural;

  void add_to( CLI::App* app )
  {
    app->add_option( "--op", op, "add or mul" )->check( CLI::IsMember( { "add", "mul" } ) );
    app->add_option( "--wl", wl, "operand word lengths: N or NA,NB" );
    app->add_option( "--signed", interp, "two's complement operands: a, b or both" )
        ->check( CLI::IsMember( { "a", "b", "both" } ) );
    app->add_option( "--keep-high", keep_high, "keep only the N high output bits" );
    app->add_option( "--pre", pre, "preprocessing, e.g. a=ds:2,b=th:48:48 or both=ds:16" );
    app->add_option( "--natural", natural, "natural ranges, e.g. a=0:159" );
  }

  block_spec spec() const
  {
    auto const w = parse_list( wl, "--wl" );
    if ( w.empty() || w.size() > 2u )
    {
      throw usage_error( "--wl expects N or NA,NB" );
    }
    auto const ia = interp == "a" || interp == "both" ? interpretation::twos_complement : interpretation::unsigned_int;
    auto const ib = interp == "b" || interp == "both" ? interpretation::twos_complement : interpretation::unsigned_int;
    auto const wa = w[0], wb = w.size() == 2u ? w[1] : w[0];
    block_spec s = op == "add" ? block_spec::adder( wa, wb, ia ) : block_spec::multiplier( wa, wb, ia, ib );
    if ( op == "add" )
    {
      s.interp_b = ib;
    }
    if ( keep_high != 0u )
    {
      s.policy = output_policy::truncate_keep_high( keep_high );
    }
    s.validate();
    return s;
  }

  std::pair<preprocess_chain, preprocess_chain> chains() const
  {
    auto const [a, b] = split_operands( pre, "--pre" );
    return { a.empty() ? preprocess_chain{} : parse_chain( a ), b.empty() ? preprocess_chain{} : parse_chain( b ) };
  }

  ppc_block block() const
  {
    auto const s = spec();
    auto const [ca, cb] = chains();
    auto const [na, nb] = split_operands( natural, "--natural" );
    std::optional<natural_range> ra, rb;
    if ( !na.empty() )
      ra = parse_natural_range( na, s.interp_a );
    if ( !nb.empty() )
      rb = parse_natural_range( nb, s.interp_b );
    return ppc_block::make( s, ca, cb, ra, rb );
  }
};

void emit( nlohmann::json const& j ) { std::cout << j.dump( 2 ) << "\n"; }

preprocess_chain chain_or_identity( std::string const& text )
{
  return text.empty() ? preprocess_chain{} : parse_chain( text );
}

/*! `;`-separated sweep entries */
std::vector<std::string> split_sweep( std::string const& text )
{
  std::vector<std::string> out;
  std::size_t pos = 0u;
  while ( !text.empty() && pos <= text.size() )
  {
    auto const semi = text.find( ';', pos );
    out.push_back( text.substr( pos, semi == std::string::npos ? std::string::npos : semi - pos ) );
    pos = semi == std::string::npos ? text.size() + 1u : semi + 1u;
  }
  return out;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Design flow for partially-precise adders and multipliers" };
  app.require_subcommand( 1 );

  // gen-tt
  block_flags gen;
  std::string gen_out;
  int gen_km = -1;
  auto* cmd_gen = app.add_subcommand( "gen-tt", "generate the truth table of a block as PLA" );
  gen.add_to( cmd_gen );
  cmd_gen->add_option( "--out", gen_out, "PLA file (default: standard output)" );
  cmd_gen->add_option( "--km", gen_km, "print the Karnaugh map of this output bit instead" );

  // minimize
  block_flags mini;
  std::string mini_in, mini_out, mini_mode{ "exact" };
  unsigned mini_iters = 16u, mini_segment = 0u;
  auto* cmd_min = app.add_subcommand( "minimize", "two-level minimization of a block or a PLA file" );
  mini.add_to( cmd_min );
  cmd_min->add_option( "--in", mini_in, "PLA file to minimize instead of a block" );
  cmd_min->add_option( "--out", mini_out, "write the cover as PLA" );
  cmd_min->add_option( "--mode", mini_mode, "exact or heuristic" )->check( CLI::IsMember( { "exact", "heuristic" } ) );
  cmd_min->add_option( "--max-iters", mini_iters, "heuristic iteration limit" );
  cmd_min->add_option( "--segment", mini_segment, "segmented estimate with this segment width" );

  // verify
  block_flags ver;
  std::string ver_cover, ver_table;
  auto* cmd_ver = app.add_subcommand( "verify", "check a PLA cover against a block or a PLA table" );
  ver.add_to( cmd_ver );
  cmd_ver->add_option( "--cover", ver_cover, "cover PLA file" )->required();
  cmd_ver->add_option( "--table", ver_table, "reference PLA table instead of a block" );

  // error
  block_flags err;
  std::string err_method{ "oracle" };
  std::optional<double> err_m;
  unsigned err_threads = 1u;
  auto* cmd_err = app.add_subcommand( "error", "PE / ME / MAE of a preprocessed block" );
  err.add_to( cmd_err );
  cmd_err->add_option( "--method", err_method, "oracle, closed or published" )
      ->check( CLI::IsMember( { "oracle", "closed", "published" } ) );
  cmd_err->add_option( "--m", err_m, "value of the symbol M in the threshold mean expressions" );
  cmd_err->add_option( "--threads", err_threads, "oracle worker threads" );

  // dc-stats
  block_flags dcs;
  auto* cmd_dc = app.add_subcommand( "dc-stats", "don't-care row counts of a block" );
  dcs.add_to( cmd_dc );

  // gaussian
  std::string g_in, g_pre, g_out;
  bool g_psnr = false, g_trace = false;
  auto* cmd_g = app.add_subcommand( "gaussian", "3x3 Gaussian filter" );
  cmd_g->add_option( "--in", g_in, "input PGM" )->required();
  cmd_g->add_option( "--pre", g_pre, "pixel preprocessing chain, e.g. ds:16" );
  cmd_g->add_option( "--out", g_out, "output PGM" );
  cmd_g->add_flag( "--psnr-against-precise", g_psnr, "report PSNR against the precise filter" );
  cmd_g->add_flag( "--trace", g_trace, "report traced signal statistics" );

  // blend
  std::string b_in1, b_in2, b_pre, b_out;
  double b_alpha = 0.5;
  std::optional<unsigned> b_alpha_int;
  bool b_natural = false, b_psnr = false, b_trace = false;
  auto* cmd_b = app.add_subcommand( "blend", "alpha blending of two images" );
  cmd_b->add_option( "--in1", b_in1, "first PGM" )->required();
  cmd_b->add_option( "--in2", b_in2, "second PGM" )->required();
  cmd_b->add_option( "--alpha", b_alpha, "blending weight in [0,1]" );
  cmd_b->add_option( "--alpha-int", b_alpha_int, "blending weight as Q0.8 integer" );
  cmd_b->add_option( "--pre", b_pre, "preprocessing chain of pixels and coefficients" );
  cmd_b->add_flag( "--natural", b_natural, "declare the natural coefficient ranges" );
  cmd_b->add_option( "--out", b_out, "output PGM" );
  cmd_b->add_flag( "--psnr-against-precise", b_psnr, "report PSNR against the precise blend" );
  cmd_b->add_flag( "--trace", b_trace, "report traced signal statistics" );

  // mac
  std::string mac_pixels, mac_weights, mac_pre, mac_natural;
  bool mac_permissive = false;
  auto* cmd_mac = app.add_subcommand( "mac", "neuron dot product (8-bit pixels, 8-bit signed weights)" );
  cmd_mac->add_option( "--pixels", mac_pixels, "comma-separated pixels" )->required();
  cmd_mac->add_option( "--weights", mac_weights, "comma-separated weights" )->required();
  cmd_mac->add_option( "--pre", mac_pre, "preprocessing: a= pixels, b= weights" );
  cmd_mac->add_option( "--natural", mac_natural, "natural ranges, e.g. a=0:159" );
  cmd_mac->add_flag( "--permissive", mac_permissive, "evaluate out-of-range inputs instead of rejecting them" );

  // trace
  std::string t_app{ "gaussian" }, t_in, t_in2, t_pre;
  double t_alpha = 0.5;
  bool t_natural = false;
  auto* cmd_t = app.add_subcommand( "trace", "signal ranges and sparsity of an application run" );
  cmd_t->add_option( "--app", t_app, "gaussian or blend" )->check( CLI::IsMember( { "gaussian", "blend" } ) );
  cmd_t->add_option( "--in", t_in, "input PGM (first image for blend)" )->required();
  cmd_t->add_option( "--in2", t_in2, "second PGM for blend" );
  cmd_t->add_option( "--pre", t_pre, "preprocessing chain" );
  cmd_t->add_option( "--alpha", t_alpha, "blending weight" );
  cmd_t->add_flag( "--natural", t_natural, "blend with natural coefficient ranges" );

  // report
  std::string r_app{ "gaussian" }, r_in, r_in2, r_sweep, r_format{ "csv" }, r_mode{ "exact" };
  double r_alpha = 0.5;
  unsigned r_segment = 4u;
  auto* cmd_r = app.add_subcommand( "report", "PSNR and literal sweep table" );
  cmd_r->add_option( "--app", r_app, "gaussian or blend" )->check( CLI::IsMember( { "gaussian", "blend" } ) );
  cmd_r->add_option( "--in", r_in, "input PGM (first image for blend)" )->required();
  cmd_r->add_option( "--in2", r_in2, "second PGM for blend" );
  cmd_r->add_option( "--sweep", r_sweep, "';'-separated configs: id, ds:16, natural, natural+ds:16, ..." );
  cmd_r->add_option( "--alpha", r_alpha, "blending weight" );
  cmd_r->add_option( "--format", r_format, "csv or json" )->check( CLI::IsMember( { "csv", "json" } ) );
  cmd_r->add_option( "--mode", r_mode, "exact or heuristic" )->check( CLI::IsMember( { "exact", "heuristic" } ) );
  cmd_r->add_option( "--segment", r_segment, "segment width of the literal estimate" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const code = app.exit( e );
    return code == 0 ? 0 : 2;
  }

  try
  {
    if ( *cmd_gen )
    {
      auto const tt = gen.block().table();
      if ( gen_km >= 0 )
      {
        if ( static_cast<unsigned>( gen_km ) >= tt.num_outputs() )
        {
          throw usage_error( "--km: output bit out of range" );
        }
        std::cout << km_render( tt, static_cast<unsigned>( gen_km ) );
        return 0;
      }
      auto const text = pla_write( tt );
      if ( gen_out.empty() )
      {
        std::cout << text;
      }
      else
      {
        write_text_file( gen_out, text );
        auto const dc = dc_count_enumerate( tt );
        emit( { { "file", gen_out },
                { "rows", tt.num_rows() },
                { "dc_rows", dc },
                { "dc_fraction", static_cast<double>( dc ) / static_cast<double>( tt.num_rows() ) } } );
      }
    }
    else if ( *cmd_min )
    {
      auto const mode = parse_minimize_mode( mini_mode );
      nlohmann::json out;
      if ( mini_segment != 0u )
      {
        if ( !mini_in.empty() )
        {
          throw usage_error( "--segment works on a block, not on --in" );
        }
        auto const b = mini.block();
        auto const est = segmented_literal_estimate( b.spec, b.reach_a(), b.reach_b(), mini_segment, mode );
        out = to_json( est.stats );
        out["segments"] = est.per_segment;
        out["recombination_excluded"] = est.recombination_excluded;
      }
      else
      {
        std::optional<multi_output_function> f;
        if ( !mini_in.empty() )
        {
          f = pla_read_file( mini_in ).to_function();
        }
        else
        {
          f = multi_output_function::from_truth_table( mini.block().table() );
        }
        auto const [c, s] = mode == minimize_mode::exact ? minimize_exact( *f ) : minimize_heuristic( *f, mini_iters );
        out = to_json( s );
        out["verified"] = verify_cover( c, *f ).pass;
        if ( !mini_out.empty() )
        {
          write_text_file( mini_out, pla_write( c ) );
          out["file"] = mini_out;
        }
        else
        {
          std::cout << pla_write( c );
          std::cerr << to_json( s ).dump() << "\n";
          return 0;
        }
      }
      emit( out );
    }
    else if ( *cmd_ver )
    {
      auto const c = pla_read_file( ver_cover ).to_cover();
      auto const f = ver_table.empty() ? multi_output_function::from_truth_table( ver.block().table() )
                                       : pla_read_file( ver_table ).to_function();
      emit( to_json( verify_cover( c, f ), c.num_inputs ) );
    }
    else if ( *cmd_err )
    {
      auto const s = err.spec();
      auto const [ca, cb] = err.chains();
      if ( err_method == "oracle" )
      {
        oracle_options o;
        o.threads = err_threads;
        auto const [na, nb] = split_operands( err.natural, "--natural" );
        if ( !na.empty() )
          o.domain_a = reachable_set( s.wl_a, s.interp_a, parse_natural_range( na, s.interp_a ), {} );
        if ( !nb.empty() )
          o.domain_b = reachable_set( s.wl_b, s.interp_b, parse_natural_range( nb, s.interp_b ), {} );
        emit( to_json( metrics_oracle( s, ca, cb, o ), "oracle" ) );
      }
      else
      {
        auto ds_step = []( preprocess_chain const& c ) -> std::optional<std::uint32_t> {
          if ( c.is_identity() )
            return 1u;
          if ( c.steps.size() == 1u && c.steps[0].kind == preprocessing_kind::down_sample )
            return c.steps[0].x;
          return std::nullopt;
        };
        if ( err_method == "closed" )
        {
          auto const xa = ds_step( ca ), xb = ds_step( cb );
          if ( !xa || !xb || s.wl_a != s.wl_b || s.is_signed() || s.policy.kind != output_policy_kind::full_width )
          {
            throw parameter_error( "closed forms need equal unsigned word lengths, full width and DS-only preprocessing" );
          }
          auto const st = s.op == block_op::add ? metrics_closed_ds_add( s.wl_a, *xa, *xb )
                                                : metrics_closed_ds_mul( s.wl_a, *xa, *xb );
          emit( to_json( st, "closed" ) );
        }
        else
        {
          if ( s.wl_a != s.wl_b || ca.steps.size() != 1u || !( ca.steps[0] == cb.steps.at( 0 ) ) )
          {
            throw parameter_error( "published expressions need equal word lengths and one identical step on both inputs" );
          }
          auto const& p = ca.steps[0];
          bool const th = p.kind == preprocessing_kind::threshold;
          auto const fam = s.op == block_op::add ? ( th ? formula_family::th_add : formula_family::ds_add )
                                                 : ( th ? formula_family::th_mul : formula_family::ds_mul );
          auto j = to_json( published_formula_report( s.wl_a, p.x, p.y, fam, err_m ) );
          j["method"] = "published";
          emit( j );
        }
      }
    }
    else if ( *cmd_dc )
    {
      auto const b = dcs.block();
      auto const tt = b.table();
      auto const dc = dc_count_enumerate( tt );
      nlohmann::json j = { { "rows", tt.num_rows() },
                           { "specified_rows", tt.specified_rows() },
                           { "dc_rows", dc },
                           { "dc_fraction", static_cast<double>( dc ) / static_cast<double>( tt.num_rows() ) } };
      auto only = [&]( preprocess_chain const& c, preprocessing_kind k ) {
        return c.steps.size() == 1u && c.steps[0].kind == k;
      };
      bool const full_nat = b.natural_a == natural_range::full( b.spec.wl_a, b.spec.interp_a ) &&
                            b.natural_b == natural_range::full( b.spec.wl_b, b.spec.interp_b );
      if ( full_nat && ( only( b.chain_a, preprocessing_kind::down_sample ) || b.chain_a.is_identity() ) &&
           ( only( b.chain_b, preprocessing_kind::down_sample ) || b.chain_b.is_identity() ) )
      {
        auto step = []( preprocess_chain const& c ) { return c.is_identity() ? 1u : c.steps[0].x; };
        j["dc_formula_ds"] = dc_formula_ds( b.spec.wl_a, b.spec.wl_b, step( b.chain_a ), step( b.chain_b ) );
      }
      if ( full_nat && only( b.chain_a, preprocessing_kind::threshold ) && only( b.chain_b, preprocessing_kind::threshold ) &&
           b.spec.wl_a == b.spec.wl_b )
      {
        auto const& pa = b.chain_a.steps[0];
        auto const& pb = b.chain_b.steps[0];
        auto const r = dc_report_th( b.spec, pa.x, pa.y, pb.x, pb.y );
        j["dc_formula_th_published"] = r.published;
        j["dc_formula_th_agrees"] = r.agree();
      }
      emit( j );
    }
    else if ( *cmd_g )
    {
      auto const img = pgm_read( g_in );
      auto const chain = chain_or_identity( g_pre );
      auto const r = gaussian_filter( img, chain );
      nlohmann::json j = { { "pre", chain.to_string() } };
      if ( !g_out.empty() )
      {
        pgm_write( r.image, g_out );
        j["out"] = g_out;
      }
      if ( g_psnr )
      {
        j["quality"] = to_json( psnr( gaussian_filter( img, {} ).image, r.image ) );
      }
      if ( g_trace )
      {
        j["trace"] = to_json( trace_report( r.trace ) );
      }
      emit( j );
    }
    else if ( *cmd_b )
    {
      auto const i1 = pgm_read( b_in1 ), i2 = pgm_read( b_in2 );
      auto const chain = chain_or_identity( b_pre );
      auto const a = b_alpha_int ? *b_alpha_int : alpha_to_int( b_alpha );
      auto const r = blend( i1, i2, a, chain, b_natural );
      nlohmann::json j = { { "pre", chain.to_string() }, { "alpha_int", a }, { "natural", b_natural } };
      if ( !b_out.empty() )
      {
        pgm_write( r.image, b_out );
        j["out"] = b_out;
      }
      if ( b_psnr )
      {
        j["quality"] = to_json( psnr( blend( i1, i2, a, {}, false ).image, r.image ) );
      }
      if ( b_trace )
      {
        j["trace"] = to_json( trace_report( r.trace ) );
      }
      emit( j );
    }
    else if ( *cmd_mac )
    {
      auto const px = parse_values( mac_pixels, "--pixels" ), wt = parse_values( mac_weights, "--weights" );
      auto const [pa, pb] = split_operands( mac_pre, "--pre" );
      auto const [na, nb] = split_operands( mac_natural, "--natural" );
      auto const spec = mac_multiplier_spec();
      std::optional<natural_range> ra, rb;
      if ( !na.empty() )
        ra = parse_natural_range( na, spec.interp_a );
      if ( !nb.empty() )
        rb = parse_natural_range( nb, spec.interp_b );
      auto const block = ppc_block::make( spec, chain_or_identity( pa ), chain_or_identity( pb ), ra, rb,
                                          mac_permissive ? strictness::permissive : strictness::strict );
      std::vector<fixed_word> p, w;
      for ( auto v : px )
        p.push_back( fixed_word::u( v, 8u ) );
      for ( auto v : wt )
        w.push_back( fixed_word::s( v, 8u ) );
      auto const acc = mac_dotproduct( p, w, block );
      emit( { { "result", acc.value() }, { "accumulator_wl", acc.wl }, { "terms", p.size() } } );
    }
    else if ( *cmd_t )
    {
      auto const img = pgm_read( t_in );
      auto const chain = chain_or_identity( t_pre );
      if ( t_app == "gaussian" )
      {
        emit( to_json( trace_report( gaussian_filter( img, chain ).trace ) ) );
      }
      else
      {
        if ( t_in2.empty() )
        {
          throw usage_error( "trace --app blend needs --in2" );
        }
        emit( to_json( trace_report( blend( img, pgm_read( t_in2 ), alpha_to_int( t_alpha ), chain, t_natural ).trace ) ) );
      }
    }
    else if ( *cmd_r )
    {
      auto const img = pgm_read( r_in );
      sweep_options opts{ r_segment, parse_minimize_mode( r_mode ) };
      std::vector<sweep_row> rows;
      if ( r_app == "gaussian" )
      {
        std::vector<preprocess_chain> chains;
        for ( auto const& s : split_sweep( r_sweep ) )
        {
          chains.push_back( s == "id" || s == "precise" ? preprocess_chain{} : parse_chain( s ) );
        }
        rows = gaussian_sweep( img, chains, opts );
      }
      else
      {
        if ( r_in2.empty() )
        {
          throw usage_error( "report --app blend needs --in2" );
        }
        std::vector<blend_config> configs;
        for ( auto s : split_sweep( r_sweep ) )
        {
          blend_config c;
          if ( s.rfind( "natural", 0 ) == 0 )
          {
            c.natural = true;
            s = s.substr( 7 );
            if ( !s.empty() && s[0] == '+' )
            {
              s = s.substr( 1 );
            }
          }
          if ( !s.empty() && s != "id" && s != "precise" )
          {
            c.chain = parse_chain( s );
          }
          configs.push_back( c );
        }
        rows = blend_sweep( img, pgm_read( r_in2 ), alpha_to_int( r_alpha ), configs, opts );
      }
      if ( r_format == "csv" )
      {
        std::cout << sweep_csv( rows );
      }
      else
      {
        emit( to_json( rows ) );
      }
    }
  }
  catch ( usage_error const& e )
  {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }
  catch ( ppc::error const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
