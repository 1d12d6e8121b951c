// Acceptance run: one PASS / FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <ppc/ppc.hpp>

#ifndef PPC_FIXTURE_DIR
#define PPC_FIXTURE_DIR "tests/fixtures"
#endif

using namespace ppc;

namespace
{

struct outcome
{
  bool pass{ true };
  std::ostringstream detail;

  void require( bool cond, std::string const& what )
  {
    if ( !cond )
    {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void run( char const* id, char const* title, double budget_s, std::function<void( outcome& )> const& fn )
{
  outcome o;
  auto const t0 = std::chrono::steady_clock::now();
  try
  {
    fn( o );
  }
  catch ( std::exception const& e )
  {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  auto const dt = std::chrono::duration<double>( std::chrono::steady_clock::now() - t0 ).count();
  if ( dt > budget_s )
  {
    o.pass = false;
    o.detail << " [over budget]";
  }
  failures += !o.pass;
  std::printf( "%s %s: %s (%.2f s of %.0f s):%s\n", id, o.pass ? "PASS" : "FAIL", title, dt, budget_s, o.detail.str().c_str() );
  std::fflush( stdout );
}

preprocess_chain ds( unsigned x ) { return x == 1u ? preprocess_chain{} : parse_chain( "ds:" + std::to_string( x ) ); }

image_u8 fixture( char const* name ) { return pgm_read( std::string( PPC_FIXTURE_DIR "/" ) + name ); }

multi_output_function random_function( std::mt19937& rng )
{
  auto const n = 1u + rng() % 6u, m = 1u + rng() % 4u;
  auto const dc_percent = rng() % 80u;
  multi_output_function f( n, m );
  for ( unsigned j = 0; j < m; ++j )
    for ( std::uint64_t mt = 0; mt < ( 1u << n ); ++mt )
    {
      if ( rng() % 100u < dc_percent )
        f.set_dc( j, mt );
      else if ( rng() & 1u )
        f.set_on( j, mt );
    }
  return f;
}

} // namespace

int main()
{
  run( "AC1", "don't-care counts by formula and by enumeration", 1.0, []( outcome& o ) {
    std::size_t checked = 0u;
    for ( unsigned wl = 2u; wl <= 8u; ++wl )
      for ( unsigned xa = 1u; xa <= ( 1u << wl ); xa <<= 1u )
        for ( unsigned xb = 1u; xb <= ( 1u << wl ); xb <<= 1u )
          for ( auto const& s : { block_spec::adder( wl, wl ), block_spec::multiplier( wl, wl ) } )
          {
            truth_table const tt( s, reachable_set( wl, ds( xa ) ), reachable_set( wl, ds( xb ) ) );
            o.require( dc_count_enumerate( tt ) == dc_formula_ds( wl, wl, xa, xb ), "formula wl " + std::to_string( wl ) );
            ++checked;
          }
    double frac[3];
    unsigned const xs[3] = { 2u, 4u, 8u };
    for ( int i = 0; i < 3; ++i )
    {
      auto const r = reachable_set( 8u, ds( xs[i] ) );
      truth_table const tt( block_spec::multiplier( 8u, 8u ), r, r );
      frac[i] = 100.0 * static_cast<double>( dc_count_enumerate( tt ) ) / static_cast<double>( tt.num_rows() );
    }
    o.require( frac[0] == 75.0 && frac[1] == 93.75 && frac[2] == 98.4375, "DC fractions" );
    o.detail << " " << checked << " blocks; DS2/4/8 DC = " << frac[0] << "% / " << frac[1] << "% / " << frac[2] << "%";
  } );

  run( "AC2", "closed-form error metrics equal the exhaustive oracle", 10.0, []( outcome& o ) {
    std::size_t checked = 0u;
    for ( unsigned wl = 2u; wl <= 8u; ++wl )
      for ( unsigned xa = 1u; xa <= 16u && xa <= ( 1u << wl ); xa <<= 1u )
        for ( unsigned xb = 1u; xb <= 16u && xb <= ( 1u << wl ); xb <<= 1u )
        {
          o.require( metrics_closed_ds_add( wl, xa, xb ) == metrics_oracle( block_spec::adder( wl, wl ), ds( xa ), ds( xb ) ),
                     "add" );
          o.require( metrics_closed_ds_mul( wl, xa, xb ) ==
                         metrics_oracle( block_spec::multiplier( wl, wl ), ds( xa ), ds( xb ) ),
                     "mul" );
          checked += 2u;
        }
    auto const spot = metrics_oracle( block_spec::multiplier( 3u, 3u ), ds( 2u ), ds( 2u ) );
    o.require( spot.pe == rational( 5, 8 ), "PE 0.625" );
    auto const mul = published_formula_report( 3u, 2u, 0u, formula_family::ds_mul );
    o.require( mul.rows.at( 0 ).agree, "published DS-mul PE" );
    std::string flagged;
    auto note = [&]( formula_report const& r, char const* label ) {
      for ( auto const& row : r.rows )
        if ( !row.agree )
          flagged += std::string( " " ) + label + " " + row.name + " " + std::to_string( row.published ) + " vs " +
                     std::to_string( row.oracle ) + ";";
    };
    note( published_formula_report( 4u, 2u, 0u, formula_family::ds_add ), "DS-add(4,2)" );
    note( published_formula_report( 3u, 5u, 0u, formula_family::th_add, 0.0 ), "TH-add(3,5,0; M=y)" );
    o.detail << " " << checked << " grid points exact; PE(3,2) = " << to_string( spot.pe ) << "; disagreements:" << flagged;
  } );

  run( "AC3", "minimizer soundness on 1000 random tables", 60.0, []( outcome& o ) {
    std::mt19937 rng( 2024u );
    std::size_t exact_better = 0u;
    for ( int i = 0; i < 1000; ++i )
    {
      auto const f = random_function( rng );
      auto const [h, hs] = minimize_heuristic( f );
      auto const [e, es] = minimize_exact( f );
      o.require( verify_cover( h, f ).pass, "heuristic cover " + std::to_string( i ) );
      o.require( verify_cover( e, f ).pass, "exact cover " + std::to_string( i ) );
      o.require( es.literals <= hs.literals, "exact <= heuristic " + std::to_string( i ) );
      exact_better += es.literals < hs.literals;
    }
    o.detail << " all covers verified; exact strictly smaller on " << exact_better << " tables";
  } );

  run( "AC4", "exact literals of the 4x4 multiplier shrink with DS", 300.0, []( outcome& o ) {
    std::vector<std::uint64_t> lits;
    for ( unsigned x : { 1u, 2u, 4u } )
    {
      auto const r = reachable_set( 4u, ds( x ) );
      truth_table const tt( block_spec::multiplier( 4u, 4u ), r, r );
      auto const [c, s] = minimize_exact( tt );
      o.require( verify_cover( c, tt ).pass, "verify" );
      lits.push_back( s.literals );
    }
    o.require( lits[1] <= lits[0] && lits[2] <= lits[1], "non-increasing" );
    o.require( lits[1] < lits[0] || lits[2] < lits[1], "strict decrease" );
    o.detail << " DS1/DS2/DS4 = " << lits[0] << " / " << lits[1] << " / " << lits[2];
  } );

  run( "AC5", "Karnaugh maps of the 2x3 multiplier", 1.0, []( outcome& o ) {
    auto const precise = km_cells( precise_tt( block_spec::multiplier( 2u, 3u ) ), 2u );
    std::vector<std::string> const expected{ "00000000", "00001111", "00011110", "00110011" };
    o.require( precise == expected, "precise grid" );
    auto const tt = truth_table( block_spec::multiplier( 2u, 3u ), reachable_set( 2u, ds( 2u ) ), reachable_set( 3u, ds( 2u ) ) );
    auto const cells = km_cells( tt, 2u );
    auto const rows = km_order( 2u ), cols = km_order( 3u );
    unsigned d = 0u;
    for ( std::size_t r = 0; r < 4u; ++r )
      for ( std::size_t c = 0; c < 8u; ++c )
      {
        bool const odd = ( rows[r] & 1u ) || ( cols[c] & 1u );
        o.require( ( cells[r][c] == 'd' ) == odd, "DS2 cell" );
        d += cells[r][c] == 'd';
      }
    o.detail << " precise grid matches; DS2 grid has " << d << " of 32 cells 'd', all on odd operands";
  } );

  run( "AC6", "Gaussian filter PSNR bands", 5.0, []( outcome& o ) {
    for ( auto const* name : { "astronaut_gray.pgm", "camera.pgm" } )
    {
      auto const img = fixture( name );
      auto const ref = gaussian_filter( img, {} ).image;
      o.require( psnr( ref, ref ).infinite() && ref == gaussian_filter( img, {} ).image, "identity" );
      double prev = std::numeric_limits<double>::infinity();
      double at16 = 0.0, at32 = 0.0;
      for ( unsigned x : { 2u, 4u, 8u, 16u, 32u } )
      {
        auto const q = psnr( ref, gaussian_filter( img, ds( x ) ).image ).psnr_db;
        o.require( q < prev, "strictly decreasing" );
        prev = q;
        if ( x == 16u )
          at16 = q;
        if ( x == 32u )
          at32 = q;
      }
      o.require( at16 >= 28.0 && at16 <= 34.0, std::string( name ) + " DS16 band" );
      o.require( at32 >= 23.0 && at32 <= 29.0, std::string( name ) + " DS32 band" );
      char buf[128];
      std::snprintf( buf, sizeof buf,  " %s DS16 %.2f dB, DS32 %.2f dB;", name, at16, at32 );
      o.detail << buf;
    }
  } );

  run( "AC7", "blend PSNR bands and lossless natural sparsity", 5.0, []( outcome& o ) {
    auto const a = fixture( "astronaut_gray.pgm" ), b = fixture( "camera.pgm" );
    auto const alpha = alpha_to_int( 0.5 );
    auto const ref = blend( a, b, alpha, {}, false ).image;
    auto const nat = blend( a, b, alpha, {}, true ).image;
    o.require( nat == ref, "natural run bit-identical" );
    auto const q16 = psnr( ref, blend( a, b, alpha, ds( 16u ), false ).image ).psnr_db;
    auto const q32 = psnr( ref, blend( a, b, alpha, ds( 32u ), false ).image ).psnr_db;
    o.require( q16 >= 27.0 && q16 <= 33.0, "DS16 band" );
    o.require( q32 >= 20.0 && q32 <= 26.0, "DS32 band" );
    char buf[128];
    std::snprintf( buf, sizeof buf,  " natural PSNR inf; DS16 %.2f dB, DS32 %.2f dB", q16, q32 );
    o.detail << buf;
  } );

  run( "AC8", "blend literal ordering from segmented estimates", 900.0, []( outcome& o ) {
    segment_cache cache;
    auto const precise = blend_literals( {}, 4u, minimize_mode::exact, &cache );
    auto const natural = blend_literals( { {}, true }, 4u, minimize_mode::exact, &cache );
    auto const both = blend_literals( { ds( 16u ), true }, 4u, minimize_mode::exact, &cache );
    auto const rn = static_cast<double>( natural ) / static_cast<double>( precise );
    auto const rb = static_cast<double>( both ) / static_cast<double>( precise );
    o.require( rn < 1.0, "natural < 1" );
    o.require( rb < rn, "natural+DS16 < natural" );
    char buf[160];
    std::snprintf( buf, sizeof buf, " precise %llu literals; natural %.4f; natural+ds:16 %.4f",
                   static_cast<unsigned long long>( precise ), rn, rb );
    o.detail << buf;
  } );

  run( "AC9", "PLA round trip and external cover", 5.0, []( outcome& o ) {
    std::mt19937 rng( 77u );
    for ( int i = 0; i < 100; ++i )
    {
      cover c;
      c.num_inputs = 3u + rng() % 10u;
      c.num_outputs = 1u + rng() % 8u;
      std::set<std::string> seen;
      for ( unsigned k = 1u + rng() % 16u; c.cubes.size() < k; )
      {
        cube q;
        for ( unsigned j = 0; j < c.num_inputs; ++j )
        {
          auto const r = rng() % 3u;
          if ( r != 2u )
          {
            q.care |= 1u << j;
            q.value |= r << j;
          }
        }
        q.outputs = rng() & ( ( std::uint64_t{ 1 } << c.num_outputs ) - 1u );
        if ( q.outputs != 0u && seen.insert( q.to_string( c.num_inputs, c.num_outputs ) ).second )
          c.cubes.push_back( q );
      }
      auto const text = pla_write( c );
      auto const back = pla_read( text ).to_cover();
      o.require( back.same_cubes( c ) && pla_write( back ) == text, "round trip " + std::to_string( i ) );
    }
    auto const ext = pla_read_file( PPC_FIXTURE_DIR "/mul2x2_espresso.pla" ).to_cover();
    auto const rep = verify_cover( ext, precise_tt( block_spec::multiplier( 2u, 2u ) ) );
    o.require( rep.pass, "external cover verifies" );
    o.detail << " 100 covers round-tripped; external 2x2 cover: " << ext.cube_count() << " cubes, " << ext.literal_count()
             << " literals, verified";
  } );

  run( "AC10", "neuron MAC properties", 1.0, []( outcome& o ) {
    auto const strict = ppc_block::make( mac_multiplier_spec(), {}, {}, natural_range{ 0, 159 } );
    bool rejected = false;
    try
    {
      strict.eval( fixed_word::u( 160, 8u ), fixed_word::s( 1, 8u ) );
    }
    catch ( range_error const& )
    {
      rejected = true;
    }
    o.require( rejected, "pixel 160 rejected" );
    auto const th = ppc_block::make( mac_multiplier_spec(), parse_chain( "th:48:48" ), {}, natural_range{ 0, 159 } );
    std::vector<fixed_word> p{ fixed_word::u( 10, 8u ), fixed_word::u( 100, 8u ) };
    std::vector<fixed_word> w{ fixed_word::s( 2, 8u ), fixed_word::s( 1, 8u ) };
    auto const dot = mac_dotproduct( p, w, th ).value();
    o.require( dot == 196, "TH dot product" );
    std::vector<fixed_word> pw( mac_max_terms, fixed_word::u( 159, 8u ) ), ww( mac_max_terms, fixed_word::s( -128, 8u ) );
    auto const worst = mac_dotproduct( pw, ww, strict ).value();
    o.require( worst == -159 * 128 * static_cast<std::int64_t>( mac_max_terms ), "worst case" );
    o.detail << " pixel 160 rejected; dot product " << dot << "; " << mac_max_terms << "-term worst case " << worst
             << " fits " << mac_accumulator_wl << " bits";
  } );

  std::printf( "%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "SOME FAIL", failures );
  return failures == 0 ? 0 : 1;
}
