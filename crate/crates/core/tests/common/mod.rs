// Reference values computed independently at 25-50 digit precision
// with an arbitrary-precision quadrature/root-finding stack, frozen
// here as ground truth.  Regenerate only from the original scripts;
// never adjust individual entries to make a test pass.
#![allow(dead_code)]

use bozdl_core::InitialData;

pub fn family(name: &str) -> InitialData {
    match name {
        "gaussian" => InitialData::gaussian(1.0, 1.0),
        "lorentzian" => InitialData::lorentzian(2.0),
        "sech2" => InitialData::sech2(1.0, 1.0),
        "spike_train" => InitialData::spike_train(16.0, 9.0).unwrap(),
        "linear_spikes" => InitialData::linear_spikes(16.0, 0.3).unwrap(),
        other => panic!("unknown reference family {other}"),
    }
}

pub struct ZdCase {
    pub family: &'static str,
    pub t: f64,
    pub z: (f64, f64),
    pub v: (f64, f64),
}

/// half-plane log-formula values: 3 families x t in {0.1,0.3,1.0} x 4 z
pub const ZD_HALFPLANE: &[ZdCase] = &[
    ZdCase { family: "gaussian", t: 0.1, z: (0.0, 1.0), v: (0.2126667675488305, -0.012425820044917687) },
    ZdCase { family: "gaussian", t: 0.1, z: (0.0, 2.0), v: (0.1274796604125271, -0.004246558630998222) },
    ZdCase { family: "gaussian", t: 0.1, z: (1.0, 1.0), v: (0.16113156443114532, 0.1006969775625946) },
    ZdCase { family: "gaussian", t: 0.1, z: (-1.0, 0.5), v: (0.1624400124617812, -0.16939712385419645) },
    ZdCase { family: "gaussian", t: 0.3, z: (0.0, 1.0), v: (0.20457864655898897, -0.034697527232757194) },
    ZdCase { family: "gaussian", t: 0.3, z: (0.0, 2.0), v: (0.12579639117699207, -0.012431806714952628) },
    ZdCase { family: "gaussian", t: 0.3, z: (1.0, 1.0), v: (0.17877978045409348, 0.08894756440848026) },
    ZdCase { family: "gaussian", t: 0.3, z: (-1.0, 0.5), v: (0.13899531421881875, -0.1627818031433942) },
    ZdCase { family: "gaussian", t: 1.0, z: (0.0, 1.0), v: (0.1585776814371781, -0.07215693718716114) },
    ZdCase { family: "gaussian", t: 1.0, z: (0.0, 2.0), v: (0.11180595146676953, -0.03335147005226948) },
    ZdCase { family: "gaussian", t: 1.0, z: (1.0, 1.0), v: (0.19616796863754973, 0.015905782363607505) },
    ZdCase { family: "gaussian", t: 1.0, z: (-1.0, 0.5), v: (0.09396333545878002, -0.13808051822534034) },
    ZdCase { family: "lorentzian", t: 0.1, z: (0.0, 1.0), v: (0.4916687599795559, -0.048231043751898295) },
    ZdCase { family: "lorentzian", t: 0.1, z: (0.0, 2.0), v: (0.33155103060566826, -0.01830537041346571) },
    ZdCase { family: "lorentzian", t: 0.1, z: (1.0, 1.0), v: (0.43417222927571486, 0.17897564756384812) },
    ZdCase { family: "lorentzian", t: 0.1, z: (-1.0, 0.5), v: (0.407758237622039, -0.3069906457894865) },
    ZdCase { family: "lorentzian", t: 0.3, z: (0.0, 1.0), v: (0.44424318986556594, -0.11634703872515491) },
    ZdCase { family: "lorentzian", t: 0.3, z: (0.0, 2.0), v: (0.3190158418047498, -0.05052692167034533) },
    ZdCase { family: "lorentzian", t: 0.3, z: (1.0, 1.0), v: (0.48324500245592017, 0.0991968623768677) },
    ZdCase { family: "lorentzian", t: 0.3, z: (-1.0, 0.5), v: (0.3356099744449216, -0.29116988639466024) },
    ZdCase { family: "lorentzian", t: 1.0, z: (0.0, 1.0), v: (0.30129109397673964, -0.1667268609602468) },
    ZdCase { family: "lorentzian", t: 1.0, z: (0.0, 2.0), v: (0.25304166301213826, -0.10178209779473356) },
    ZdCase { family: "lorentzian", t: 1.0, z: (1.0, 1.0), v: (0.3836995871459933, -0.09067013891298611) },
    ZdCase { family: "lorentzian", t: 1.0, z: (-1.0, 0.5), v: (0.22380272851843802, -0.23616212959626973) },
    ZdCase { family: "sech2", t: 0.1, z: (0.0, 1.0), v: (0.22390768322388951, -0.012464043768710615) },
    ZdCase { family: "sech2", t: 0.1, z: (0.0, 2.0), v: (0.13838986527744837, -0.004379323777720269) },
    ZdCase { family: "sech2", t: 0.1, z: (1.0, 1.0), v: (0.175931555506288, 0.10075690331202446) },
    ZdCase { family: "sech2", t: 0.1, z: (-1.0, 0.5), v: (0.18080014479502401, -0.16659840072922083) },
    ZdCase { family: "sech2", t: 0.3, z: (0.0, 1.0), v: (0.21590177297946903, -0.034853804624914234) },
    ZdCase { family: "sech2", t: 0.3, z: (0.0, 2.0), v: (0.13668263528824773, -0.012828365246037593) },
    ZdCase { family: "sech2", t: 0.3, z: (1.0, 1.0), v: (0.19342738660851339, 0.08823633521770184) },
    ZdCase { family: "sech2", t: 0.3, z: (-1.0, 0.5), v: (0.15705210595437846, -0.16153564499075196) },
    ZdCase { family: "sech2", t: 1.0, z: (0.0, 1.0), v: (0.17005580855999533, -0.07322257423847568) },
    ZdCase { family: "sech2", t: 1.0, z: (0.0, 2.0), v: (0.12243402391306588, -0.03460411115610988) },
    ZdCase { family: "sech2", t: 1.0, z: (1.0, 1.0), v: (0.20943704879957423, 0.013629887285158333) },
    ZdCase { family: "sech2", t: 1.0, z: (-1.0, 0.5), v: (0.11011156101552522, -0.13987885907722433) },
];

/// t = 0 Cauchy transforms of the same families
pub const CAUCHY: &[ZdCase] = &[
    ZdCase { family: "gaussian", t: 0.0, z: (0.0, 1.0), v: (0.2137917880779035, -1.6996364990457356e-34) },
    ZdCase { family: "gaussian", t: 0.0, z: (0.0, 2.0), v: (0.12769783815525287, -3.065212706979277e-35) },
    ZdCase { family: "gaussian", t: 0.0, z: (1.0, 1.0), v: (0.1523721026284563, 0.10410946910141582) },
    ZdCase { family: "gaussian", t: 0.0, z: (-1.0, 0.5), v: (0.17745016643378894, -0.17143585956555035) },
    ZdCase { family: "lorentzian", t: 0.0, z: (0.0, 1.0), v: (0.5, 5.2108616018647706e-34) },
    ZdCase { family: "lorentzian", t: 0.0, z: (0.0, 2.0), v: (0.3333333333333333, 3.0652127069792766e-34) },
    ZdCase { family: "lorentzian", t: 0.0, z: (1.0, 1.0), v: (0.4, 0.2) },
    ZdCase { family: "lorentzian", t: 0.0, z: (-1.0, 0.5), v: (0.46153846153846156, -0.3076923076923077) },
    ZdCase { family: "sech2", t: 0.0, z: (0.0, 1.0), v: (0.22502031240412707, -1.9776833206468464e-34) },
    ZdCase { family: "sech2", t: 0.0, z: (0.0, 2.0), v: (0.1386110434152464, 1.779858862861209e-34) },
    ZdCase { family: "sech2", t: 0.0, z: (1.0, 1.0), v: (0.167166323583653, 0.10455718353544705) },
    ZdCase { family: "sech2", t: 0.0, z: (-1.0, 0.5), v: (0.1957949085504355, -0.16769581621993426) },
];

/// spike families (n >= 2 bumps carry < 1e-12 and are omitted there)
pub const SPIKE_ZD: &[ZdCase] = &[
    ZdCase { family: "spike_train", t: 0.1, z: (0.0, 1.0), v: (0.001319234071090862, 0.0003699958521368855) },
    ZdCase { family: "spike_train", t: 0.1, z: (0.0, 2.0), v: (0.0026079149619355527, 0.00035722650422804564) },
    ZdCase { family: "spike_train", t: 0.1, z: (1.0, 1.0), v: (0.0013259167412022904, -0.0009396910288949098) },
    ZdCase { family: "spike_train", t: 0.1, z: (-1.0, 0.5), v: (0.0006738090330160741, 0.0017033289002345838) },
    ZdCase { family: "spike_train", t: 0.3, z: (0.0, 1.0), v: (0.0013346011753405241, 0.0011177172826589094) },
    ZdCase { family: "spike_train", t: 0.3, z: (0.0, 2.0), v: (0.002637456798846906, 0.0010785162058751375) },
    ZdCase { family: "spike_train", t: 0.3, z: (1.0, 1.0), v: (0.0013236741140194217, -0.0001983172245295651) },
    ZdCase { family: "spike_train", t: 0.3, z: (-1.0, 0.5), v: (0.0006910883608035836, 0.002482530627324335) },
    ZdCase { family: "spike_train", t: 1.0, z: (0.0, 1.0), v: (0.001551245767667235, 0.0040636075602896215) },
    ZdCase { family: "spike_train", t: 1.0, z: (0.0, 2.0), v: (0.0030492224419135473, 0.0038867894037308017) },
    ZdCase { family: "spike_train", t: 1.0, z: (1.0, 1.0), v: (0.0014548605301706406, 0.0025807396090395994) },
    ZdCase { family: "spike_train", t: 1.0, z: (-1.0, 0.5), v: (0.000855720845515315, 0.00573358810758382) },
    ZdCase { family: "linear_spikes", t: 0.1, z: (0.0, 1.0), v: (0.0015840804088213098, 0.0005329960742495378) },
    ZdCase { family: "linear_spikes", t: 0.1, z: (0.0, 2.0), v: (0.003131420655828899, 0.0005145851234889901) },
    ZdCase { family: "linear_spikes", t: 0.1, z: (1.0, 1.0), v: (0.0015900121827828154, -0.0010385854236389489) },
    ZdCase { family: "linear_spikes", t: 0.1, z: (-1.0, 0.5), v: (0.0008101695607979969, 0.0021358625695066568) },
    ZdCase { family: "linear_spikes", t: 0.3, z: (0.0, 1.0), v: (0.0016108639922581649, 0.0016151103663143212) },
    ZdCase { family: "linear_spikes", t: 0.3, z: (0.0, 2.0), v: (0.0031828901795557386, 0.0015580028437077865) },
    ZdCase { family: "linear_spikes", t: 0.3, z: (1.0, 1.0), v: (0.0015911795256722358, 3.0013666052097223e-05) },
    ZdCase { family: "linear_spikes", t: 0.3, z: (-1.0, 0.5), v: (0.0008377363259265883, 0.003268438053876102) },
    ZdCase { family: "linear_spikes", t: 1.0, z: (0.0, 1.0), v: (0.0020347281448399148, 0.006141785018710024) },
    ZdCase { family: "linear_spikes", t: 1.0, z: (0.0, 2.0), v: (0.003981346435038147, 0.005836681842303017) },
    ZdCase { family: "linear_spikes", t: 1.0, z: (1.0, 1.0), v: (0.001864100751726106, 0.004224714232754887) },
    ZdCase { family: "linear_spikes", t: 1.0, z: (-1.0, 0.5), v: (0.0011567844181795159, 0.008382830022817478) },
];

pub struct GateCase {
    pub family: &'static str,
    pub t: f64,
    pub z: (f64, f64),
    pub gate: f64,
    pub v: (f64, f64),
}

/// expansion-regime cases: gate = 2|t| sup|f_z| (all < 1/2)
pub const NEUMANN_CASES: &[GateCase] = &[
    GateCase { family: "gaussian", t: 0.05, z: (0.0, 3.0), gate: 0.03333333333333333, v: (0.08948244580030898, -0.0010262572165320237) },
    GateCase { family: "gaussian", t: 0.1, z: (0.0, 3.0), gate: 0.06666666666666667, v: (0.0894281626979295, -0.0020502263070725515) },
    GateCase { family: "gaussian", t: 0.05, z: (1.0, 2.0), gate: 0.04514238672954526, v: (0.1105728235585447, 0.04522838374504557) },
    GateCase { family: "gaussian", t: 0.2, z: (0.0, 4.0), gate: 0.1, v: (0.06837245667212558, -0.002376628735603404) },
    GateCase { family: "lorentzian", t: 0.05, z: (0.0, 3.0), gate: 0.06666666666666667, v: (0.24984404223841972, -0.004681105589414013) },
    GateCase { family: "lorentzian", t: 0.1, z: (0.0, 2.5), gate: 0.16, v: (0.284706311297883, -0.012729848264131625) },
    GateCase { family: "lorentzian", t: 0.08, z: (1.0, 2.0), gate: 0.14446281270100694, v: (0.30854388420434115, 0.08985904828370368) },
    GateCase { family: "sech2", t: 0.05, z: (0.0, 2.0), gate: 0.05, v: (0.13855557937323762, -0.002194701591974828) },
    GateCase { family: "sech2", t: 0.1, z: (0.0, 3.0), gate: 0.06666666666666667, v: (0.09857631140603178, -0.0021424893962741277) },
    GateCase { family: "sech2", t: 0.15, z: (-1.0, 2.0), gate: 0.1354294113259098, v: (0.11617914734816298, -0.05205719615001007) },
];

/// flagship expansion: gaussian, t = 0.05, z = 3i; sup|f_z| = 1/3
pub const FLAGSHIP_SUP_FZ: f64 = 0.3333333333333333;
pub const FLAGSHIP_ZD: (f64, f64) = (0.08948244580030898, -0.0010262572165320237);
pub const FLAGSHIP_TERMS: &[(f64, f64)] = &[
    (0.08950057559069498, -4.4810775608866965e-35),
    (-8.433530625020665e-37, -0.0010266394454751583),
    (-1.8138668645672804e-05, 2.8212320574109456e-39),
    (-1.4445591471374997e-40, 3.8244819447050594e-07),
    (8.883907987756624e-09, -1.3065627127988517e-41),
    (2.4502939275927704e-43, -2.194014202711307e-10),
    (-5.652398284701956e-12, -6.54496326821517e-45),
    (5.4346532522014616e-49, 1.5019735614504827e-13),
    (4.086519798324048e-15, -3.4249536881435697e-53),
    (-1.112807622858413e-58, -1.132763743761618e-16),
];

/// t-free collapsed terms (1/2 i pi n) Int f_z^n
pub const TR_LORENTZIAN_Z2I_N3: (f64, f64) = (-0.04526748971193416, -5.49183943333787e-35);
pub const TR_GAUSSIAN_Z3I_N2: (f64, f64) = (8.433530625020664e-36, 0.010266394454751582);
pub const TR_GAUSSIAN_Z3I_N4: (f64, f64) = (1.4445591471374996e-37, -0.0003824481944705059);

/// gaussian characteristic fold at t = 2
pub const FOLD_YC1: f64 = 0.12703355463759214;
pub const FOLD_YC2: f64 = 1.5958932059913649;
pub const FOLD_K_LO: f64 = 1.9091973783024447;
pub const FOLD_K_HI: f64 = 4.063001507564878;
pub const FOLD_TC: f64 = 0.582910995399281;
pub const FOLD_CASES: &[(f64, &[f64], f64)] = &[
    (-2.0, &[-2.0579177628006273], 0.014479440700156776),
    (0.5, &[-0.9927958463269512], 0.37319896158173776),
    (3.0, &[-0.40229763099849536, 0.7620628939848906, 2.9995048922972725], 0.2912139081715283),
];
pub const FOLD_LINE: &[(f64, f64)] = &[
    (0.5, 0.37319896158173776),
    (1.0, 0.46787959556301395),
    (2.5, 0.3803135490963426),
    (3.5, 0.2013186750125624),
    (5.0, 1.388794387267902e-11),
];

/// pre-critical characteristics, gaussian, t = 0.2: (x, y root, value)
pub const CHAR_T02: &[(f64, f64, f64)] = &[
    (-1.0, -1.1153030292827577, 0.2882575732068941),
    (-0.3, -0.5843059834762633, 0.7107649586906583),
    (0.0, -0.3531095059311762, 0.8827737648279405),
    (0.4, -2.4651752824879713e-32, 1.0),
    (0.9, 0.6315725546302332, 0.6710686134244169),
    (1.6, 1.5655110222949262, 0.08622244426268465),
    (3.0, 2.999950621451206, 0.00012344637198467026),
];

/// odd two-pole rational: 1/(1+(x-2)^2) - 1/(1+(x+2)^2)
pub const ODD_TC: f64 = 0.722485329089538; // coarse-grid slope max, ~1e-4
pub const ODD_CHAR_T015: &[(f64, f64)] = &[
    (0.5, 0.15264414818053595),
    (1.5, 0.6005224936956676),
    (-0.5, -0.15264414818053595),
    (-1.5, -0.6005224936956676),
];
pub const ODD_HALF_T015: &[(f64, (f64, f64))] = &[
    (0.5, (0.07028346103985904, -0.3026827058924747)),
    (1.5, (0.2250850565289238, -0.2326202751692838)),
];

/// chain integrals F_n, n = 1..6, for the standard test functions
pub const CHAIN_G1_F: &[(f64, f64)] = &[
    (1.2533141373155001, 0.0),
    (1.8137993642342174, 0.0),
    (2.7841639984158535, 0.0),
    (4.41382127037338, 0.0),
    (7.141658126622059, 0.0),
    (11.71927102544781, 0.0),
];
pub const CHAIN_G2_F: &[(f64, f64)] = &[
    (0.9399856029866253, 0.0),
    (0.9068996821171089, 0.0),
    (0.8265486870297065, 0.0),
    (0.6620731905560069, 0.0),
    (0.38436007278695095, 0.0),
    (-0.029896099554713985, 0.0),
];
pub const CHAIN_LOR1_F: &[(f64, f64)] = &[
    (1.5707963267948966, 0.0),
    (3.289868133696453, 0.0),
    (7.751569170074955, 0.0),
    (19.481818206800487, 0.0),
    (51.00328079754691, 0.0),
    (137.34131336790063, 0.0),
];
pub const CHAIN_HC_F: &[(f64, f64)] = &[
    (1.2122515915394039, 0.0),
    (1.6240681644095054, 0.0),
    (2.2625559795119594, 0.0),
    (3.218406329101129, 0.0),
    (4.637559127141328, 0.0),
    (6.74135628671732, 0.0),
];
pub const CHAIN_CX_F: &[(f64, f64)] = &[
    (1.3316462708977188, -3.851859888774472e-34),
    (2.040524284763495, -2.6713725090506124e-17),
    (3.314351478582935, 6.007157661927498e-18),
    (5.558656162376476, -4.5028271476038606e-18),
    (9.513880450854023, 1.771315299298193e-17),
    (16.513390864979495, 1.3896761345832953e-16),
];

/// sign-pattern region splits (j = number of negative coordinates)
pub const REGION_G2_A0_N2: f64 = 0.3022998940390363;
pub const REGION_G2_A0_N3: f64 = 0.20663717175742655;
pub const REGION_G2_A1_N2: f64 = 0.30229989403903634;
pub const REGION_G2_A1_N3: f64 = 0.2066371717574267;
pub const REGION_G2_A2_N2: f64 = 0.30229989403903623;
pub const REGION_G2_A2_N3: f64 = 0.2066371717574267;
pub const REGION_HC_A0_N2: f64 = 0.5413560548031684;
pub const REGION_HC_A1_N2: f64 = 0.5413560548031686;

/// (1/n) Int u0^n dx for n = 2, 3, 4
pub const MOMENT_RHS_LORENTZIAN: [f64; 3] = [3.141592653589793, 3.141592653589793, 3.9269908169872414];
pub const MOMENT_RHS_GAUSSIAN: [f64; 3] = [0.6266570686577502, 0.3411089026488295, 0.2215567313631895];
pub const MOMENT_RHS_SECH2: [f64; 3] = [0.6666666666666666, 0.35555555555555557, 0.22857142857142856];

/// weak pairings of the t = 2 gaussian profile with three windows
pub const PAIRINGS_T2: [f64; 3] = [0.7882093418388771, 1.2680804837069268, 0.3283367017516447];

